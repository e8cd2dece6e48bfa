// Copyright 2026 The homcascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "homcascade/dynamics.hpp"

namespace homcascade {

enum class JumpSampling {
  /// Bernoulli draw per step with probability (Pi_a + Pi_b) dt; click times
  /// land on the dt grid.
  kFirstOrder,
  /// Draw u, evolve until the no-jump norm^2 reaches u, jump there; click
  /// times are continuous.
  kNormThreshold,
};

struct ClickEvent {
  Detector detector = Detector::kA;
  double time = 0.0;
};

struct TrajectoryResult {
  std::vector<ClickEvent> clicks;  ///< time ordered, at most two
  /// No-jump survival probability of the segment active at termination.
  /// The vacuum segment after a second click cannot emit, so completed
  /// records carry 1.
  double residual_norm2 = 1.0;
  /// Click probability consumed in that same segment.
  double consumed_probability = 0.0;
  bool censored = true;

  bool complete() const { return !censored; }
  bool same_detector() const { return clicks.size() == 2 && clicks[0].detector == clicks[1].detector; }
};

struct EnsembleConfig {
  std::size_t n_traj = 10000;
  double dt = 0.1;
  /// Cutoff time; values <= 0 select adaptive_t_max().
  double t_max = 0.0;
  std::uint64_t seed = 20140101;
  JumpSampling sampling = JumpSampling::kFirstOrder;
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;

  void validate() const;
};

/// Uniform variates for one trajectory. Trajectory i of an ensemble always
/// draws from substream(seed, i), independent of scheduling.
class RandomStream {
 public:
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on the open interval (0, 1).
  double uniform();

 private:
  explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}
  std::mt19937_64 engine_;
};

/// J_j v / sqrt(Pi_j). Throws ImpossibleJumpError when Pi_j == 0.
StateVector collapse(const SystemParams& p, const StateVector& v, Detector d);

/// Time by which the two-excitation no-jump norm^2 is below threshold plus
/// the time by which every one-excitation state has survival below
/// threshold, rounded up to a multiple of dt. Capped at 1e4 / kappa.
double adaptive_t_max(const SystemParams& p, double dt, double threshold = 1e-4);

/// Reusable sampler: operators and step maps are built once per parameter
/// set and shared read-only across workers.
class TrajectorySampler {
 public:
  TrajectorySampler(const SystemParams& p, const EnsembleConfig& cfg);

  double t_max() const { return t_max_; }
  const EnsembleConfig& config() const { return cfg_; }
  const SectorModel& model() const { return model_; }

  TrajectoryResult run(RandomStream& rng) const;

 private:
  TrajectoryResult run_first_order(RandomStream& rng) const;
  TrajectoryResult run_norm_threshold(RandomStream& rng) const;
  double find_threshold_time(const Vector& amps, int sector, double h, double u) const;

  SectorModel model_;
  EnsembleConfig cfg_;
  double t_max_;
  std::array<Matrix, 3> step_map_;
};

TrajectoryResult run_trajectory(const SystemParams& p, const EnsembleConfig& cfg, RandomStream& rng);

/// cfg.n_traj trajectories, result i from substream i.
std::vector<TrajectoryResult> run_ensemble(const SystemParams& p, const EnsembleConfig& cfg);
std::vector<TrajectoryResult> run_ensemble(const TrajectorySampler& sampler);

}  // namespace homcascade
