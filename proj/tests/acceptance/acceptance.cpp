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

// Acceptance gate. Prints one PASS/FAIL line per criterion with the
// measured quantities and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homcascade/io.hpp"
#include "homcascade/oracle.hpp"
#include "homcascade/stats.hpp"
#include "support/fock.hpp"

namespace {

using namespace homcascade;
using namespace homcascade::testing;

constexpr double kDelta = 0.5;
constexpr std::size_t kTrajectories = 10000;
constexpr std::uint64_t kSeed = 20140101;

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string fmt2(const char* f, double x, double y) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x, y);
  return buf;
}

// Ensembles are shared between criteria so each runs once.
struct EnsembleRun {
  std::vector<TrajectoryResult> results;
  EnsembleSummary summary;
  double seconds = 0.0;
};

EnsembleRun& ensemble(double g, JumpSampling sampling) {
  static std::map<std::pair<double, int>, EnsembleRun> cache;
  const auto key = std::make_pair(g, static_cast<int>(sampling));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EnsembleConfig cfg;
  cfg.n_traj = kTrajectories;
  cfg.dt = 0.1;
  cfg.seed = kSeed;
  cfg.sampling = sampling;
  const auto t0 = std::chrono::steady_clock::now();
  EnsembleRun run;
  run.results = run_ensemble(SystemParams::symmetric(g, kDelta), cfg);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run.summary = summarize(run.results);
  return cache.emplace(key, std::move(run)).first->second;
}

const PairProbabilities& oracle(double g) {
  static std::map<double, PairProbabilities> cache;
  auto it = cache.find(g);
  if (it == cache.end()) it = cache.emplace(g, pair_probabilities(SystemParams::symmetric(g, kDelta))).first;
  return it->second;
}

Verdict basis_correctness() {
  Verdict v;
  v.require(sector_dimension(2) == 19, "sector 2 has " + std::to_string(sector_dimension(2)) + " states");
  v.require(sector_dimension(1) == 6, "sector 1 has " + std::to_string(sector_dimension(1)) + " states");
  bool ordered = true;
  for (std::size_t i = 0; i < 19; ++i) ordered = ordered && occupation(sector_basis(2)[i]) == published_sector2()[i];
  v.require(ordered, "c1..c19 order");
  return v;
}

Verdict coincidence_amplitudes() {
  const SystemParams p = SystemParams::symmetric(0.25, kDelta, 1.0);
  const FockModel fock;
  const BigMatrix ja = fock.jump_a(p.kappa), jb = fock.jump_b(p.kappa);
  const BigMatrix m2 = ja.adjoint() * ja.adjoint() * ja * ja;
  const BigMatrix m11 = jb.adjoint() * ja.adjoint() * ja * jb;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const StateVector s(2, random_amplitudes(rng, 19));
    const auto c = [&](int n) { return s[static_cast<std::size_t>(n - 1)]; };
    const BigVector big = lift(s);
    const double op2 = big.dot(m2 * big).real(), op11 = big.dot(m11 * big).real();
    const double amp2 = p.kappa * p.kappa * std::norm(std::sqrt(2.0) * c(10) + std::sqrt(2.0) * c(12) + 2.0 * c(15));
    const double amp11 = p.kappa * p.kappa * std::norm(c(14) + c(16) + c(17) + c(19));
    const EqualTimeDensities lib = equal_time_densities(p, s, 1.0);
    for (auto [x, y] : {std::pair{op2, amp2}, {op11, amp11}, {lib.p2, amp2}, {lib.p11, amp11}})
      worst = std::max(worst, std::abs(x - y) / std::max(std::abs(y), 1e-300));
  }
  Verdict v;
  v.require(worst <= 1e-10, fmt("max relative deviation %.2e over 100 random states", worst));
  return v;
}

Verdict langevin_consistency() {
  const SystemParams p = SystemParams::symmetric(0.37, kDelta, 1.0);
  const double kappa = p.kappa;
  Matrix h = Matrix::Zero(kFullDim, kFullDim), hs = h;
  std::array<Matrix, 2> jump{h, h};
  std::array<Matrix, 4> a{h, h, h, h};
  for (int k = 0; k <= 2; ++k) {
    h += embed(coherent_hamiltonian(p, k));
    hs += embed(system_hamiltonian(p, k));
  }
  for (int k = 1; k <= 2; ++k) {
    jump[0] += embed(jump_operator(p, Detector::kA, k));
    jump[1] += embed(jump_operator(p, Detector::kB, k));
    for (int m = 0; m < 4; ++m) a[m] += embed(annihilation(m + 1, k));
  }
  const Complex i(0.0, 1.0);
  const auto comm = [](const Matrix& x, const Matrix& y) -> Matrix { return x * y - y * x; };
  // d<X>/dt from the master equation, in the Heisenberg picture.
  const auto master = [&](const Matrix& x) -> Matrix {
    Matrix out = i * comm(h, x);
    for (const Matrix& j : jump) out += j.adjoint() * x * j - 0.5 * (j.adjoint() * j * x + x * j.adjoint() * j);
    return out;
  };
  // Vacuum-input Langevin drift with a1 feeding a3 and a4 feeding a2.
  const auto langevin = [&](const Matrix& x) -> Matrix {
    Matrix out = -i * comm(x, hs);
    for (const Matrix& am : a) out += -0.5 * kappa * comm(x, am.adjoint()) * am + 0.5 * kappa * am.adjoint() * comm(x, am);
    out += -kappa * comm(x, a[2].adjoint()) * a[0] + kappa * a[0].adjoint() * comm(x, a[2]);
    out += -kappa * comm(x, a[1].adjoint()) * a[3] + kappa * a[3].adjoint() * comm(x, a[1]);
    return out;
  };
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (const Matrix& x : a) {
    const Matrix lhs = master(x), rhs = langevin(x);
    for (int rep = 0; rep < 50; ++rep) {
      const Vector psi = random_amplitudes(rng, kFullDim);
      worst = std::max(worst, std::abs(psi.dot(lhs * psi) - psi.dot(rhs * psi)));
    }
  }
  // Directionality: a3 picks up -kappa a1, a2 picks up -kappa a4, nothing in reverse.
  const double forward = std::max(max_abs(master(a[2]) + i * comm(a[2], hs) + 0.5 * kappa * a[2] + kappa * a[0]),
                                  max_abs(master(a[1]) + i * comm(a[1], hs) + 0.5 * kappa * a[1] + kappa * a[3]));
  const double reverse = std::max(max_abs(master(a[0]) + i * comm(a[0], hs) + 0.5 * kappa * a[0]),
                                  max_abs(master(a[3]) + i * comm(a[3], hs) + 0.5 * kappa * a[3]));
  Verdict v;
  v.require(worst <= 1e-10, fmt("drift mismatch %.2e on 200 random states", worst));
  v.require(forward <= 1e-10, fmt("a1->a3, a4->a2 coefficient kappa (residual %.1e)", forward));
  v.require(reverse <= 1e-10, fmt("no reverse drive (residual %.1e)", reverse));
  return v;
}

Verdict mc_weak() {
  Verdict v;
  const auto& r25 = ensemble(0.25, JumpSampling::kFirstOrder);
  const auto& r10 = ensemble(0.1, JumpSampling::kFirstOrder);
  v.require(std::abs(r25.summary.f_same - 0.62) <= 0.03,
            fmt2("g=0.25: f_same %.4f (%.1f s)", r25.summary.f_same, r25.seconds));
  v.require(std::abs(r10.summary.f_same - 0.71) <= 0.03,
            fmt2("g=0.1: f_same %.4f (%.1f s)", r10.summary.f_same, r10.seconds));
  v.require(r25.summary.n_total == kTrajectories && r10.summary.n_total == kTrajectories, "n_traj 10000");
  return v;
}

Verdict mc_strong() {
  const auto& r = ensemble(5.0, JumpSampling::kFirstOrder);
  Verdict v;
  v.require(std::abs(r.summary.f_same - 0.51) <= 0.02, fmt2("g=5: f_same %.4f (%.1f s)", r.summary.f_same, r.seconds));
  v.detail += "; censored " + std::to_string(r.summary.n_censored);
  return v;
}

Verdict hom_ceiling() {
  const double f = oracle(0.02).same_fraction();
  Verdict v;
  v.require(std::abs(f - 0.75) <= 0.02, fmt("g=0.02: oracle same fraction %.4f", f));
  return v;
}

Verdict oracle_mc_equivalence() {
  Verdict v;
  for (double g : {0.1, 0.25, 2.0, 5.0}) {
    const double o = oracle(g).same_fraction();
    for (JumpSampling s : {JumpSampling::kFirstOrder, JumpSampling::kNormThreshold}) {
      const auto& sum = ensemble(g, s).summary;
      const double z = std::abs(sum.f_same - o) / sum.binomial_stderr;
      std::ostringstream what;
      what << "g=" << g << (s == JumpSampling::kFirstOrder ? " first-order " : " norm-threshold ")
           << fmt2("mc %.4f vs oracle %.4f", sum.f_same, o) << fmt(" (%.2f sigma)", z);
      v.require(z <= 3.0, what.str());
    }
  }
  return v;
}

Verdict completeness() {
  Verdict v;
  double worst = 0.0;
  for (double g : {0.02, 0.1, 0.25, 2.0, 5.0}) worst = std::max(worst, oracle(g).completeness_error());
  v.require(worst <= 1e-4, fmt("pairs + residual off unity by at most %.1e", worst));

  double trace_err = 0.0, pop_err = 0.0;
  for (double g : {0.25, 2.0}) {
    const SystemParams p = SystemParams::symmetric(g, kDelta);
    const SectorModel model(p);
    const double t_max = decay_time(model, initial_state(), 1e-4, 0.5, 1e4);
    for (const auto& d : lindblad_series(p, t_max, 0.5)) {
      trace_err = std::max(trace_err, std::abs(d.trace - 1.0));
      const double survival = (evolution_matrix(model.h_nh[2], d.time) * initial_state().amplitudes).squaredNorm();
      pop_err = std::max(pop_err, std::abs(d.sector_population[2] - survival));
    }
  }
  v.require(trace_err <= 1e-8, fmt("master-equation trace error %.1e", trace_err));
  v.require(pop_err <= 1e-6, fmt("sector-2 population vs no-jump norm^2 %.1e", pop_err));
  return v;
}

std::size_t local_maxima(const DensityTrace& tr, const std::vector<double>& y, double t_hi) {
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < tr.times.size() && tr.times[i] <= t_hi; ++i) n += y[i] > y[i - 1] && y[i] >= y[i + 1];
  return n;
}

double integral(const DensityTrace& tr, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < tr.times.size(); ++i) acc += 0.5 * (tr.times[i] - tr.times[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

Verdict density_shape() {
  Verdict v;
  const PropagatorConfig fine{0.01};
  const auto window = [](double g) {
    const SectorModel model(SystemParams::symmetric(g, kDelta));
    return decay_time(model, initial_state(), 1e-6, 0.5, 1e4);
  };
  const DensityTrace weak = density_scan(SystemParams::symmetric(0.1, kDelta), fine, window(0.1), 0.1);
  const double ratio = integral(weak, weak.p11) / integral(weak, weak.p2);
  v.require(ratio < 0.2, fmt("g=0.1: int P11 / int P2 = %.3f", ratio));

  const DensityTrace strong = density_scan(SystemParams::symmetric(2.0, kDelta), fine, window(2.0), 0.1);
  const double i2 = integral(strong, strong.p2), i11 = integral(strong, strong.p11);
  const double rel = std::abs(i2 - i11) / std::max(i2, i11);
  const std::size_t m2 = local_maxima(strong, strong.p2, 10.0), m11 = local_maxima(strong, strong.p11, 10.0);
  v.require(rel < 0.25, fmt("g=2: integrals differ by %.3f", rel));
  v.require(m2 >= 3 && m11 >= 3, "g=2: maxima in [0,10] P2 " + std::to_string(m2) + ", P11 " + std::to_string(m11));
  return v;
}

Verdict waiting_times() {
  const auto& r = ensemble(0.25, JumpSampling::kFirstOrder);
  const WaitingTimes w = waiting_time_split(r.results);
  const BootstrapInterval ci = bootstrap_mean_difference(w.same, w.diff, 10000, 0.99, kSeed);
  Verdict v;
  v.require(ci.lower > 0.0, fmt2("mean dT same %.3f < diff %.3f", mean(w.same), mean(w.diff)) +
                                fmt2(", 99%% interval of the gap [%.3f, %.3f]", ci.lower, ci.upper));
  return v;
}

std::string clicks_csv(const SystemParams& p, unsigned workers) {
  EnsembleConfig cfg;
  cfg.n_traj = 2000;
  cfg.seed = kSeed;
  cfg.workers = workers;
  std::ostringstream os;
  io::write_clicks_csv(os, run_ensemble(p, cfg), R"({"seed":20140101})");
  return os.str();
}

Verdict symmetry_determinism() {
  Verdict v;
  for (double g : {0.25, 5.0}) {
    const auto& s = ensemble(g, JumpSampling::kFirstOrder).summary;
    const double gap = std::abs(static_cast<double>(s.n_aa) - static_cast<double>(s.n_bb));
    const double sigma = std::sqrt(static_cast<double>(s.n_same));
    std::ostringstream what;
    what << "g=" << g << " aa " << s.n_aa << " vs bb " << s.n_bb << fmt(" (%.2f sigma)", gap / sigma);
    v.require(gap <= 3.0 * sigma, what.str());
  }
  const JointDensityGrid grid = joint_density_grid(SystemParams::symmetric(0.25, kDelta), 0.1, 20.0);
  const double asym = (grid.densities[pair_index(Detector::kA, Detector::kA)] -
                       grid.densities[pair_index(Detector::kB, Detector::kB)])
                          .cwiseAbs()
                          .maxCoeff();
  v.require(asym <= 1e-10, fmt("oracle aa - bb density %.1e", asym));

  const SystemParams p = SystemParams::symmetric(0.25, kDelta);
  const std::string ref = clicks_csv(p, 1);
  const bool identical = ref == clicks_csv(p, 1) && ref == clicks_csv(p, 2) && ref == clicks_csv(p, 4);
  v.require(identical, "click CSV byte-identical across runs and 1/2/4 workers");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"basis correctness", basis_correctness},
      {"coincidence amplitudes", coincidence_amplitudes},
      {"Langevin consistency", langevin_consistency},
      {"Monte Carlo weak coupling", mc_weak},
      {"Monte Carlo strong coupling", mc_strong},
      {"HOM ceiling", hom_ceiling},
      {"oracle vs Monte Carlo", oracle_mc_equivalence},
      {"completeness and normalization", completeness},
      {"equal-time density shape", density_shape},
      {"waiting-time ordering", waiting_times},
      {"symmetry and determinism", symmetry_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::printf("%s  %2zu  %-32s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
