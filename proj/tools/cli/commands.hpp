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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "homcascade/oracle.hpp"
#include "homcascade/stats.hpp"
#include "homcascade/trajectory.hpp"

namespace homcascade::cli {

enum ExitCode : int { kOk = 0, kInvalidConfig = 2, kNumericalFailure = 3 };

struct RunConfig {
  std::string subcommand;
  double g_over_kappa = 0.25;
  double delta_over_kappa = 0.5;
  double delta_T = 0.1;
  double dt = 0.1;
  /// <= 0: adaptive (mc), 40 / kappa (densities), automatic (oracle).
  double t_max = 0.0;
  std::size_t n_traj = 10000;
  std::uint64_t seed = 20140101;
  double bin_width = 0.5;
  bool cascade_term = true;
  Frame frame = Frame::kRotating;
  double omega_c = 10.0;
  JumpSampling sampling = JumpSampling::kFirstOrder;
  std::string propagator = "expm";
  /// Oracle quadrature step; <= 0 picks by coupling strength.
  double quad_step = 0.0;
  double export_step = 0.1;
  double export_t_max = 20.0;
  bool scaled = true;
  bool svg = false;
  std::vector<double> g_list;
  std::filesystem::path out_dir = "out";
  /// Execution detail only; never changes any output byte.
  unsigned workers = 1;

  SystemParams params() const;
  EnsembleConfig ensemble() const;
  PropagatorConfig propagator_config() const;
  HistogramSpec histogram_spec() const;
  void validate() const;
  /// Resolved configuration echoed into every output file. Excludes
  /// `workers`, which has no effect on results.
  std::string to_json() const;
};

struct McOutcome {
  EnsembleSummary summary;
  double t_max = 0.0;
};

struct OracleOutcome {
  PairProbabilities quadrature;
  PairProbabilities closed_form;
};

struct SweepRow {
  double g_over_kappa = 0.0;
  double f_same_mc = 0.0;
  double f_same_oracle = 0.0;
  double stderr_mc = 0.0;
};

DensityTrace cmd_densities(const RunConfig& cfg);
McOutcome cmd_mc(const RunConfig& cfg);
OracleOutcome cmd_oracle(const RunConfig& cfg);
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg);
void cmd_basis(const RunConfig& cfg);
void cmd_operators(const RunConfig& cfg);

/// Parses argv, runs the subcommand and maps errors to exit codes; error
/// details go to `err` as one JSON object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homcascade::cli
