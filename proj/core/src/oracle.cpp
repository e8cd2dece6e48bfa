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

#include "homcascade/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "homcascade/errors.hpp"

namespace homcascade {

namespace {

// Quadratic-form integrals I = int_0^T U(t)^dag Q U(t) dt together with
// P = U(T). Segments compose as I(a + b) = I(a) + P(a)^dag I(b) P(a), so a
// composite Simpson rule over n panels of width 2h is assembled from one
// panel by binary powering, identical to summing the panels in order.
struct Segment {
  std::vector<Matrix> integrals;
  Matrix propagator;
};

Segment compose(const Segment& first, const Segment& second) {
  Segment out;
  out.integrals.reserve(first.integrals.size());
  const Matrix& p = first.propagator;
  for (std::size_t i = 0; i < first.integrals.size(); ++i)
    out.integrals.push_back(first.integrals[i] + p.adjoint() * second.integrals[i] * p);
  out.propagator = second.propagator * p;
  return out;
}

// One Simpson panel [0, 2h] for each form in qs.
Segment simpson_panel(const Matrix& u_h, const std::vector<Matrix>& qs, double h) {
  const Matrix u_2h = u_h * u_h;
  Segment s;
  for (const Matrix& q : qs)
    s.integrals.push_back(h / 3.0 * (q + 4.0 * (u_h.adjoint() * q * u_h) + u_2h.adjoint() * q * u_2h));
  s.propagator = u_2h;
  return s;
}

Segment power(Segment panel, std::size_t count) {
  Segment acc;
  bool empty = true;
  while (count > 0) {
    if (count & 1u) {
      acc = empty ? panel : compose(acc, panel);
      empty = false;
    }
    count >>= 1u;
    if (count > 0) panel = compose(panel, panel);
  }
  return acc;
}

std::size_t even_intervals(double t, double h) {
  auto n = static_cast<std::size_t>(std::ceil(t / h - 1e-9));
  if (n % 2 == 1) ++n;
  return std::max<std::size_t>(n, 2);
}

double quadratic_form(const Vector& v, const Matrix& m) { return (v.adjoint() * m * v)(0, 0).real(); }

// X = int_0^inf U(s)^dag Q U(s) ds for U(s) = exp(-i H s), from
// H^dag X - X H = i Q, solved as a Kronecker-vectorized linear system.
Matrix integrated_form(const Matrix& h, const Matrix& q) {
  const Eigen::Index n = h.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix hd = h.adjoint();
  Matrix sys = Matrix::Zero(n * n, n * n);
  // Column-major vec: vec(A X) = (I kron A) vec X, vec(X B) = (B^T kron I) vec X.
  for (Eigen::Index c = 0; c < n; ++c) sys.block(c * n, c * n, n, n) += hd;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) sys.block(c * n, r * n, n, n) -= h(r, c) * id;
  const Matrix rhs_m = Complex(0.0, 1.0) * q;
  const Vector rhs = Eigen::Map<const Vector>(rhs_m.data(), n * n);
  const Vector x = sys.partialPivLu().solve(rhs);
  return Eigen::Map<const Matrix>(x.data(), n, n);
}

}  // namespace

double first_click_density(const SystemParams& p, Detector j, double t) {
  if (t < 0.0) throw InvalidArgument("time must be non-negative");
  const SectorModel model(p);
  const Vector psi = evolution_matrix(model.h_nh[2], t) * initial_state().amplitudes;
  return (model.jump(j, 2).matrix * psi).squaredNorm();
}

double joint_click_density(const SystemParams& p, Detector j1, Detector j2, double t1, double t2) {
  if (t1 < 0.0 || t2 < t1) throw InvalidArgument("joint density needs 0 <= t1 <= t2");
  const SectorModel model(p);
  const Vector psi = evolution_matrix(model.h_nh[2], t1) * initial_state().amplitudes;
  const Vector phi = evolution_matrix(model.h_nh[1], t2 - t1) * (model.jump(j1, 2).matrix * psi);
  return (model.jump(j2, 1).matrix * phi).squaredNorm();
}

PairProbabilities pair_probabilities(const SystemParams& p, const QuadratureConfig& cfg) {
  const SectorModel model(p);
  const bool strong = std::max(std::abs(p.g_left), std::abs(p.g_right)) >= p.kappa;
  const double h = cfg.step > 0.0 ? cfg.step : (strong ? 0.01 : 0.05) / p.kappa;
  const double search = std::max(h, 0.5 / p.kappa);
  const double t_outer = cfg.t_outer > 0.0
                             ? cfg.t_outer
                             : decay_time(model, initial_state(), cfg.residual_target, search, cfg.time_cap);
  const double t_inner = cfg.t_inner > 0.0
                             ? cfg.t_inner
                             : single_excitation_decay_time(model, cfg.residual_target, search, cfg.time_cap);
  const std::size_t n_outer = even_intervals(t_outer, h);
  const std::size_t n_inner = even_intervals(t_inner, h);

  // Inner integrals over s = t2 - t1 as quadratic forms on sector 1, plus
  // the survival form U^dag U at s = t_inner.
  std::vector<Matrix> decay;
  for (int d = 0; d < 2; ++d) decay.push_back(model.jumps[1][d].matrix.adjoint() * model.jumps[1][d].matrix);
  const Segment inner = power(simpson_panel(evolution_matrix(model.h_nh[1], h), decay, h), n_inner / 2);
  const Matrix tail = inner.propagator.adjoint() * inner.propagator;

  // Outer integral over t1 on sector 2: forms J1^dag M2 J1 for each ordered
  // pair, and J1^dag tail J1 for the mass still in sector 1 at t_inner.
  std::vector<Matrix> forms;
  for (int d1 = 0; d1 < 2; ++d1) {
    const Matrix& j1 = model.jumps[2][d1].matrix;
    for (int d2 = 0; d2 < 2; ++d2) forms.push_back(j1.adjoint() * inner.integrals[d2] * j1);
  }
  Matrix tail_form = Matrix::Zero(19, 19);
  for (int d1 = 0; d1 < 2; ++d1)
    tail_form += model.jumps[2][d1].matrix.adjoint() * tail * model.jumps[2][d1].matrix;
  forms.push_back(tail_form);
  const Segment outer = power(simpson_panel(evolution_matrix(model.h_nh[2], h), forms, h), n_outer / 2);

  const Vector psi0 = initial_state().amplitudes;
  PairProbabilities out;
  for (std::size_t i = 0; i < 4; ++i) out.p[i] = quadratic_form(psi0, outer.integrals[i]);
  out.residual = (outer.propagator * psi0).squaredNorm() + quadratic_form(psi0, outer.integrals[4]);
  out.step = h;
  out.t_outer = static_cast<double>(n_outer) * h;
  out.t_inner = static_cast<double>(n_inner) * h;
  out.accuracy_warning = out.residual > 2.0 * cfg.residual_target;
  return out;
}

PairProbabilities pair_probabilities_exact(const SystemParams& p) {
  const SectorModel model(p);
  const Matrix& h1 = model.h_nh[1].matrix;
  const Matrix& h2 = model.h_nh[2].matrix;
  const Vector psi0 = initial_state().amplitudes;
  PairProbabilities out;
  for (int d2 = 0; d2 < 2; ++d2) {
    const Matrix& j2 = model.jumps[1][d2].matrix;
    const Matrix second = integrated_form(h1, j2.adjoint() * j2);
    for (int d1 = 0; d1 < 2; ++d1) {
      const Matrix& j1 = model.jumps[2][d1].matrix;
      const Matrix first = integrated_form(h2, j1.adjoint() * second * j1);
      out.p[2 * d1 + d2] = quadratic_form(psi0, first);
    }
  }
  out.residual = 0.0;
  out.t_outer = out.t_inner = std::numeric_limits<double>::infinity();
  return out;
}

JointDensityGrid joint_density_grid(const SystemParams& p, double step, double t_max) {
  if (!(step > 0.0) || !(t_max >= 0.0)) throw InvalidArgument("grid needs step > 0 and t_max >= 0");
  const SectorModel model(p);
  const auto n = static_cast<std::size_t>(std::floor(t_max / step + 1e-9)) + 1;
  JointDensityGrid grid;
  grid.times.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.times[i] = static_cast<double>(i) * step;
  for (auto& m : grid.densities) m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  const Matrix u1 = evolution_matrix(model.h_nh[1], step);
  const Matrix u2 = evolution_matrix(model.h_nh[2], step);
  Vector psi = initial_state().amplitudes;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) psi = u2 * psi;
    for (int d1 = 0; d1 < 2; ++d1) {
      Vector phi = model.jumps[2][d1].matrix * psi;
      for (std::size_t k = i; k < n; ++k) {
        if (k > i) phi = u1 * phi;
        for (int d2 = 0; d2 < 2; ++d2)
          grid.densities[2 * d1 + d2](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
              (model.jumps[1][d2].matrix * phi).squaredNorm();
      }
    }
  }
  return grid;
}

}  // namespace homcascade
