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

#include "homcascade/dynamics.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "homcascade/errors.hpp"

namespace homcascade {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void require_square(const SectorOperator& h) {
  if (h.source != h.target) throw SectorMismatchError("generator must map a sector to itself");
}

std::size_t whole_steps(double t, double dt) {
  return static_cast<std::size_t>(std::floor(t / dt + 1e-9));
}

}  // namespace

void PropagatorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

Matrix evolution_matrix(const SectorOperator& h, double t) {
  require_square(h);
  const Matrix arg = (kMinusI * t) * h.matrix;
  return arg.exp();
}

Propagator::Propagator(SectorOperator generator, PropagatorConfig cfg)
    : generator_(std::move(generator)), cfg_(cfg) {
  cfg_.validate();
  require_square(generator_);
  if (cfg_.method == PropagationMethod::kMatrixExponential) step_map_ = evolution_matrix(generator_, cfg_.dt);
}

void Propagator::advance(Vector& amps, const Matrix& one_step, double h) const {
  const double before = amps.squaredNorm();
  if (cfg_.method == PropagationMethod::kMatrixExponential) {
    amps = one_step * amps;
  } else {
    const Matrix& m = generator_.matrix;
    const Vector k1 = kMinusI * (m * amps);
    const Vector k2 = kMinusI * (m * (amps + (0.5 * h) * k1));
    const Vector k3 = kMinusI * (m * (amps + (0.5 * h) * k2));
    const Vector k4 = kMinusI * (m * (amps + h * k3));
    amps += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double after = amps.squaredNorm();
  if (after > before * (1.0 + cfg_.tol) + 1e-300)
    throw IntegratorError("no-jump norm increased during propagation (" + std::to_string(before) + " -> " +
                          std::to_string(after) + "); reduce the time step");
}

void Propagator::step(Vector& amps) const { advance(amps, step_map_, cfg_.dt); }

StateVector Propagator::propagate(const StateVector& v, double t) const {
  if (v.sector != sector()) throw SectorMismatchError("state sector differs from propagator sector");
  if (t < 0.0) throw InvalidArgument("propagation time must be non-negative");
  Vector amps = v.amplitudes;
  const std::size_t n = whole_steps(t, cfg_.dt);
  for (std::size_t i = 0; i < n; ++i) step(amps);
  const double rest = t - static_cast<double>(n) * cfg_.dt;
  if (rest > 1e-12 * cfg_.dt) {
    const Matrix tail = cfg_.method == PropagationMethod::kMatrixExponential ? evolution_matrix(generator_, rest)
                                                                             : Matrix();
    advance(amps, tail, rest);
  }
  return StateVector(v.sector, std::move(amps));
}

StateVector propagate(const SectorOperator& h, const StateVector& v, double t, const PropagatorConfig& cfg) {
  return Propagator(h, cfg).propagate(v, t);
}

DetectionRates detection_rates(const SystemParams& p, const StateVector& v) {
  if (v.sector == 0) return {};
  return {norm_squared(jump_operator(p, Detector::kA, v.sector).apply(v)),
          norm_squared(jump_operator(p, Detector::kB, v.sector).apply(v))};
}

EqualTimeDensities equal_time_densities(const SystemParams& p, const StateVector& v2, double delta_t) {
  if (v2.sector != 2) throw SectorMismatchError("equal-time densities need a two-excitation state");
  const SectorOperator ja1 = jump_operator(p, Detector::kA, 1);
  const StateVector after_a = jump_operator(p, Detector::kA, 2).apply(v2);
  const StateVector after_b = jump_operator(p, Detector::kB, 2).apply(v2);
  return {norm_squared(ja1.apply(after_a)) * delta_t, norm_squared(ja1.apply(after_b)) * delta_t};
}

DensityTrace density_scan(const SystemParams& p, const PropagatorConfig& cfg, double t_max, double delta_t) {
  if (!(t_max >= 0.0)) throw InvalidArgument("t_max must be non-negative");
  if (!(delta_t > 0.0)) throw InvalidArgument("reporting interval must be positive");
  const Propagator prop(non_hermitian_hamiltonian(p, 2), cfg);
  DensityTrace trace;
  trace.delta_t = delta_t;
  const std::size_t n = whole_steps(t_max, cfg.dt);
  trace.times.reserve(n + 1);
  trace.p2.reserve(n + 1);
  trace.p11.reserve(n + 1);
  trace.norm2.reserve(n + 1);
  StateVector v = initial_state();
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) prop.step(v.amplitudes);
    const EqualTimeDensities d = equal_time_densities(p, v, delta_t);
    trace.times.push_back(static_cast<double>(i) * cfg.dt);
    trace.p2.push_back(d.p2);
    trace.p11.push_back(d.p11);
    trace.norm2.push_back(norm_squared(v));
  }
  return trace;
}

SectorModel::SectorModel(const SystemParams& p) : params(p) {
  p.validate();
  for (int k = 0; k <= kMaxExcitation; ++k) h_nh[k] = non_hermitian_hamiltonian(p, k);
  for (int k = 1; k <= kMaxExcitation; ++k) {
    jumps[k][0] = jump_operator(p, Detector::kA, k);
    jumps[k][1] = jump_operator(p, Detector::kB, k);
  }
}

DetectionRates SectorModel::rates(const Vector& amps, int k) const {
  if (k == 0) return {};
  return {(jumps[k][0].matrix * amps).squaredNorm(), (jumps[k][1].matrix * amps).squaredNorm()};
}

namespace {

// Smallest multiple of step (up to cap) where survival(t) < threshold, for a
// survival that is non-increasing in t. Doubling bracket, then bisection on
// the step grid.
template <typename Survival>
double first_crossing(Survival&& survival, double threshold, double step, double cap) {
  const auto max_k = static_cast<std::size_t>(std::ceil(cap / step));
  if (survival(0.0) < threshold) return 0.0;
  std::size_t lo = 0, hi = 1;
  while (survival(static_cast<double>(hi) * step) >= threshold) {
    if (hi >= max_k) return cap;
    lo = hi;
    hi = std::min(2 * hi, max_k);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (survival(static_cast<double>(mid) * step) < threshold ? hi : lo) = mid;
  }
  return static_cast<double>(hi) * step;
}

}  // namespace

double decay_time(const SectorModel& model, const StateVector& start, double threshold, double step, double cap) {
  const SectorOperator& h = model.h_nh[start.sector];
  return first_crossing(
      [&](double t) { return (evolution_matrix(h, t) * start.amplitudes).squaredNorm(); }, threshold, step, cap);
}

double single_excitation_decay_time(const SectorModel& model, double threshold, double step, double cap) {
  const SectorOperator& h = model.h_nh[1];
  return first_crossing(
      [&](double t) {
        const double s = Eigen::JacobiSVD<Matrix>(evolution_matrix(h, t)).singularValues()(0);
        return s * s;
      },
      threshold, step, cap);
}

}  // namespace homcascade
