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

#include "homcascade/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "homcascade/errors.hpp"

namespace homcascade {

namespace {

constexpr double kTimeCap = 1e4;

Detector pick_detector(const DetectionRates& r, double u) {
  return u * r.total() < r.a ? Detector::kA : Detector::kB;
}

}  // namespace

void EnsembleConfig::validate() const {
  if (n_traj < 1) throw InvalidArgument("n_traj must be at least 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!std::isfinite(t_max)) throw InvalidArgument("t_max must be finite");
  if (workers < 1) throw InvalidArgument("workers must be at least 1");
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x686f6d63u};
  return RandomStream(seq);
}

double RandomStream::uniform() {
  // 53 random mantissa bits, shifted by half an ulp to exclude 0.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

StateVector collapse(const SystemParams& p, const StateVector& v, Detector d) {
  StateVector out = jump_operator(p, d, v.sector).apply(v);
  const double pi = norm_squared(out);
  if (!(pi > 0.0))
    throw ImpossibleJumpError(std::string("click at detector ") + detector_label(d) + " has zero probability");
  out.amplitudes /= std::sqrt(pi);
  return out;
}

double adaptive_t_max(const SystemParams& p, double dt, double threshold) {
  const SectorModel model(p);
  const double search_step = 0.5 / p.kappa;
  const double cap = kTimeCap / p.kappa;
  const double two = decay_time(model, initial_state(), threshold, search_step, cap);
  const double one = single_excitation_decay_time(model, threshold, search_step, cap);
  const double t = std::min(two + one, cap);
  return std::ceil(t / dt - 1e-9) * dt;
}

TrajectorySampler::TrajectorySampler(const SystemParams& p, const EnsembleConfig& cfg)
    : model_(p), cfg_(cfg), t_max_(cfg.t_max) {
  cfg_.validate();
  if (t_max_ <= 0.0) t_max_ = adaptive_t_max(p, cfg_.dt);
  for (int k = 1; k <= kMaxExcitation; ++k) step_map_[k] = evolution_matrix(model_.h_nh[k], cfg_.dt);
}

TrajectoryResult TrajectorySampler::run(RandomStream& rng) const {
  return cfg_.sampling == JumpSampling::kFirstOrder ? run_first_order(rng) : run_norm_threshold(rng);
}

TrajectoryResult TrajectorySampler::run_first_order(RandomStream& rng) const {
  TrajectoryResult res;
  const double dt = cfg_.dt;
  const auto n_steps = static_cast<std::size_t>(std::floor(t_max_ / dt + 1e-9));
  int sector = 2;
  Vector amps = initial_state().amplitudes;
  double survival = 1.0;  // product of (1 - p) over the segment
  double norm2 = 1.0;     // exact no-jump norm^2 of the segment
  double consumed = 0.0;

  for (std::size_t step = 0; step < n_steps && sector > 0; ++step) {
    const DetectionRates r = model_.rates(amps, sector);
    const double p = r.total() * dt;
    if (p > 1.0)
      throw IntegratorError("click probability per step exceeds one (" + std::to_string(p) + "); reduce dt");
    const double t_next = static_cast<double>(step + 1) * dt;
    if (rng.uniform() < p) {
      const Detector d = pick_detector(r, rng.uniform());
      res.clicks.push_back({d, t_next});
      amps = model_.jump(d, sector).matrix * amps;
      amps /= amps.norm();
      --sector;
      survival = norm2 = 1.0;
      consumed = 0.0;
      continue;
    }
    consumed += survival * p;
    survival *= 1.0 - p;
    amps = step_map_[sector] * amps;
    const double n = amps.squaredNorm();
    if (n > 1.0 + 1e-9) throw IntegratorError("no-jump norm increased during a step");
    if (!(n > 0.0)) break;
    norm2 *= n;
    amps /= std::sqrt(n);
  }
  res.censored = res.clicks.size() < 2;
  res.residual_norm2 = norm2;
  res.consumed_probability = consumed;
  return res;
}

double TrajectorySampler::find_threshold_time(const Vector& amps, int sector, double h, double u) const {
  // f(s) = ||U(s) amps||^2 - u decreases monotonically with f'(s) = -Pi(s).
  const SectorOperator& gen = model_.h_nh[sector];
  double lo = 0.0, hi = h;
  double f_lo = amps.squaredNorm() - u;
  double f_hi = (evolution_matrix(gen, h) * amps).squaredNorm() - u;
  double s = f_lo / (f_lo - f_hi) * h;
  for (int iter = 0; iter < 60; ++iter) {
    const Vector v = evolution_matrix(gen, s) * amps;
    const double f = v.squaredNorm() - u;
    if (std::abs(f) < 1e-14 || hi - lo < 1e-13) break;
    if (f > 0.0) {
      lo = s;
      f_lo = f;
    } else {
      hi = s;
      f_hi = f;
    }
    const double slope = -model_.rates(v, sector).total();
    double next = slope < 0.0 ? s - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  return s;
}

TrajectoryResult TrajectorySampler::run_norm_threshold(RandomStream& rng) const {
  TrajectoryResult res;
  const double dt = cfg_.dt;
  int sector = 2;
  Vector amps = initial_state().amplitudes;
  double threshold = rng.uniform();
  double t = 0.0;
  std::size_t step = 0;

  while (sector > 0) {
    const double t_next = std::min(static_cast<double>(step + 1) * dt, t_max_);
    const double h = t_next - t;
    if (h <= 1e-12 * dt) break;
    const Vector next = h < dt * (1.0 - 1e-12) ? Vector(evolution_matrix(model_.h_nh[sector], h) * amps)
                                                 : Vector(step_map_[sector] * amps);
    if (next.squaredNorm() > amps.squaredNorm() * (1.0 + 1e-9))
      throw IntegratorError("no-jump norm increased during a step");
    if (next.squaredNorm() > threshold) {
      amps = next;
      t = t_next;
      ++step;
      continue;
    }
    const double s = find_threshold_time(amps, sector, h, threshold);
    const Vector at_jump = evolution_matrix(model_.h_nh[sector], s) * amps;
    const DetectionRates r = model_.rates(at_jump, sector);
    if (!(r.total() > 0.0)) throw IntegratorError("norm dropped with zero click rate");
    const Detector d = pick_detector(r, rng.uniform());
    t += s;
    res.clicks.push_back({d, t});
    amps = model_.jump(d, sector).matrix * at_jump;
    amps /= amps.norm();
    --sector;
    threshold = rng.uniform();
    // Continue on the dt grid from the jump time.
    step = static_cast<std::size_t>(std::floor(t / dt + 1e-9));
  }
  res.censored = res.clicks.size() < 2;
  res.residual_norm2 = sector == 0 ? 1.0 : amps.squaredNorm();
  res.consumed_probability = sector == 0 ? 0.0 : 1.0 - res.residual_norm2;
  return res;
}

TrajectoryResult run_trajectory(const SystemParams& p, const EnsembleConfig& cfg, RandomStream& rng) {
  return TrajectorySampler(p, cfg).run(rng);
}

std::vector<TrajectoryResult> run_ensemble(const TrajectorySampler& sampler) {
  const EnsembleConfig& cfg = sampler.config();
  std::vector<TrajectoryResult> out(cfg.n_traj);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.n_traj)));
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < cfg.n_traj; i += workers) {
        RandomStream rng = RandomStream::substream(cfg.seed, i);
        out[i] = sampler.run(rng);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<TrajectoryResult> run_ensemble(const SystemParams& p, const EnsembleConfig& cfg) {
  return run_ensemble(TrajectorySampler(p, cfg));
}

}  // namespace homcascade
