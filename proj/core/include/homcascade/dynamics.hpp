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

#include <array>
#include <vector>

#include "homcascade/operators.hpp"

namespace homcascade {

enum class PropagationMethod {
  kMatrixExponential,  ///< exp(-i H dt) precomputed once per sector
  kRungeKutta4,        ///< classic fixed-step RK4
};

struct PropagatorConfig {
  double dt = 0.1;
  PropagationMethod method = PropagationMethod::kMatrixExponential;
  /// Allowed relative norm growth per step before IntegratorError.
  double tol = 1e-9;

  void validate() const;
};

/// exp(-i H t) for a square sector operator.
Matrix evolution_matrix(const SectorOperator& h, double t);

/// Fixed-step no-jump propagator for one generator. Holds the one-step map
/// so that repeated stepping is a single small matrix-vector product.
class Propagator {
 public:
  Propagator(SectorOperator generator, PropagatorConfig cfg);

  int sector() const { return generator_.source; }
  const PropagatorConfig& config() const { return cfg_; }
  const SectorOperator& generator() const { return generator_; }

  /// One step of length cfg.dt. Throws IntegratorError on norm growth.
  void step(Vector& amps) const;

  /// Evolves over an arbitrary duration t >= 0 (whole steps plus a
  /// remainder step).
  StateVector propagate(const StateVector& v, double t) const;

 private:
  void advance(Vector& amps, const Matrix& one_step, double h) const;

  SectorOperator generator_;
  PropagatorConfig cfg_;
  Matrix step_map_;  // only for the exponential method
};

/// Approximates exp(-i H t) v. H must be square on v's sector.
StateVector propagate(const SectorOperator& h, const StateVector& v, double t, const PropagatorConfig& cfg);

struct DetectionRates {
  double a = 0.0;
  double b = 0.0;

  double total() const { return a + b; }
  double operator[](Detector d) const { return d == Detector::kA ? a : b; }
};

/// Pi_j = <v| J_j^dag J_j |v>, per unit time.
DetectionRates detection_rates(const SystemParams& p, const StateVector& v);

struct EqualTimeDensities {
  double p2 = 0.0;   ///< both clicks at detector a (equals the bb value by mirror symmetry)
  double p11 = 0.0;  ///< one click at a and one at b
};

/// <a_out^dag2 a_out^2> delta_t and <b_out^dag a_out^dag a_out b_out> delta_t
/// on a sector-2 state, evaluated as ||J_a J_a v||^2 and ||J_a J_b v||^2.
/// Throws SectorMismatchError for other sectors.
EqualTimeDensities equal_time_densities(const SystemParams& p, const StateVector& v2, double delta_t);

struct DensityTrace {
  std::vector<double> times;
  std::vector<double> p2;
  std::vector<double> p11;
  double delta_t = 0.1;
  /// Survival probability of the no-jump branch at each time.
  std::vector<double> norm2;
};

/// Equal-time densities along the pure no-jump branch from |e00,e00>, on
/// the grid t = 0, dt, 2 dt, ..., <= t_max.
DensityTrace density_scan(const SystemParams& p, const PropagatorConfig& cfg, double t_max, double delta_t);

/// Precomputed per-sector operators shared by trajectory and oracle code.
struct SectorModel {
  SystemParams params;
  std::array<SectorOperator, 3> h_nh;
  /// jumps[k][d]: J_d from sector k (k = 1, 2); jumps[0] unused.
  std::array<std::array<SectorOperator, 2>, 3> jumps;

  explicit SectorModel(const SystemParams& p);

  const SectorOperator& jump(Detector d, int k) const { return jumps[k][d == Detector::kA ? 0 : 1]; }
  DetectionRates rates(const Vector& amps, int k) const;
};

/// Smallest grid time at which the no-jump norm^2 of the given start state
/// drops below threshold, searched up to cap. Returns cap if never reached.
double decay_time(const SectorModel& model, const StateVector& start, double threshold, double step, double cap);

/// Smallest grid time at which ||exp(-i H_1 t)||_2^2 drops below threshold:
/// the worst-case survival of any single-excitation state.
double single_excitation_decay_time(const SectorModel& model, double threshold, double step, double cap);

}  // namespace homcascade
