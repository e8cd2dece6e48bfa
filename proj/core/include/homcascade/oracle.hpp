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

// Deterministic two-click statistics computed from no-jump propagation and
// jump application, with no sampling.

#include <array>
#include <vector>

#include "homcascade/dynamics.hpp"

namespace homcascade {

/// Index of an ordered detector pair (first, second): aa=0, ab=1, ba=2, bb=3.
inline constexpr std::size_t pair_index(Detector first, Detector second) {
  return (first == Detector::kA ? 0u : 2u) + (second == Detector::kA ? 0u : 1u);
}

/// ||J_j U(t) psi0||^2.
double first_click_density(const SystemParams& p, Detector j, double t);

/// ||J_j2 U(t2 - t1) J_j1 U(t1) psi0||^2 for 0 <= t1 <= t2.
double joint_click_density(const SystemParams& p, Detector j1, Detector j2, double t1, double t2);

struct QuadratureConfig {
  /// Grid step in both t1 and t2 - t1; <= 0 selects 0.05 for |g| < kappa
  /// and 0.01 otherwise.
  double step = 0.0;
  /// Truncation of the t1 axis; <= 0 selects the time the two-excitation
  /// survival falls below residual_target.
  double t_outer = 0.0;
  /// Truncation of the t2 - t1 axis; <= 0 selects the time every
  /// one-excitation state's survival falls below residual_target.
  double t_inner = 0.0;
  double residual_target = 1e-6;
  /// Upper bound for the automatic truncation times (units of 1/kappa).
  double time_cap = 1e6;
};

struct PairProbabilities {
  /// Indexed by pair_index().
  std::array<double, 4> p{};
  /// Probability mass that has not produced two clicks inside the truncated
  /// domain (still in sector 2 at t_outer, or in sector 1 for longer than
  /// t_inner).
  double residual = 0.0;
  double step = 0.0;
  double t_outer = 0.0;
  double t_inner = 0.0;

  double operator()(Detector a, Detector b) const { return p[pair_index(a, b)]; }
  double same() const { return p[0] + p[3]; }
  double different() const { return p[1] + p[2]; }
  double total() const { return same() + different(); }
  /// 1 - total(): the part of the unit probability not assigned to a pair.
  double deficit() const { return 1.0 - total(); }
  double same_fraction() const { return same() / total(); }
  /// |total + residual - 1|: zero up to quadrature error.
  double completeness_error() const { return std::abs(total() + residual - 1.0); }
  /// residual exceeds the requested target.
  bool accuracy_warning = false;
};

/// Composite Simpson over {0 <= t1 <= t_outer} x {0 <= t2 - t1 <= t_inner},
/// the region of the ordered-time triangle t1 <= t2 kept after truncation.
PairProbabilities pair_probabilities(const SystemParams& p, const QuadratureConfig& cfg = {});

/// Infinite-horizon probabilities from the Lyapunov-type identities
/// H^dag X - X H = i Q, which give X = int_0^inf U^dag Q U ds in closed
/// form. Independent of the quadrature route.
PairProbabilities pair_probabilities_exact(const SystemParams& p);

/// Joint densities on a uniform grid t1, t2 = 0, step, ..., t_max.
/// densities[pair](i, k) holds the value at (t1 = i step, t2 = k step) and is
/// zero for k < i.
struct JointDensityGrid {
  std::vector<double> times;
  std::array<Eigen::MatrixXd, 4> densities;
};

JointDensityGrid joint_density_grid(const SystemParams& p, double step, double t_max);

/// Master-equation diagnostics at one time.
struct LindbladDiagnostics {
  double time = 0.0;
  double trace = 1.0;
  /// Trace of rho restricted to sectors 0, 1, 2.
  std::array<double, 3> sector_population{};
};

/// Evolves rho over the full 26-dimensional space with Hamiltonian
/// H_s (+ H_casc) and dissipators D[J_a], D[J_b], starting from
/// |e00,e00><e00,e00|. Returns diagnostics at t = 0, sample, 2 sample, ...
/// up to t. Throws IntegratorError if the trace drifts from one by more
/// than 1e-8.
std::vector<LindbladDiagnostics> lindblad_series(const SystemParams& p, double t, double sample);

LindbladDiagnostics lindblad_check(const SystemParams& p, double t);

}  // namespace homcascade
