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

#include "homcascade/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "homcascade/errors.hpp"

namespace homcascade {

void HistogramSpec::validate() const {
  if (!(bin_width > 0.0)) throw InvalidArgument("bin width must be positive");
  if (t_max > t_min) return;
  if (t_max != 0.0 && t_max < t_min) throw InvalidArgument("histogram range must satisfy t_max > t_min");
}

std::uint64_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

namespace {

std::size_t bins_to_cover(double lo, double hi, double w) {
  return static_cast<std::size_t>(std::floor((hi - lo) / w)) + 1;
}

}  // namespace

Histogram make_histogram(std::span<const double> samples, const HistogramSpec& spec) {
  spec.validate();
  Histogram h;
  h.t_min = spec.t_min;
  h.bin_width = spec.bin_width;
  const bool fixed = spec.t_max > spec.t_min;
  std::size_t n_bins = 0;
  if (fixed) {
    n_bins = static_cast<std::size_t>(std::ceil((spec.t_max - spec.t_min) / spec.bin_width - 1e-12));
  } else if (!samples.empty()) {
    const double hi = *std::max_element(samples.begin(), samples.end());
    n_bins = hi >= spec.t_min ? bins_to_cover(spec.t_min, hi, spec.bin_width) : 0;
  }
  h.counts.assign(n_bins, 0);
  for (double x : samples) {
    const double pos = std::floor((x - h.t_min) / h.bin_width);
    if (pos < 0.0 || pos >= static_cast<double>(n_bins)) {
      ++h.overflow;
      continue;
    }
    ++h.counts[static_cast<std::size_t>(pos)];
  }
  return h;
}

WaitingTimes waiting_time_split(std::span<const TrajectoryResult> results) {
  WaitingTimes w;
  for (const auto& r : results) {
    if (r.censored || r.clicks.size() != 2) continue;
    const double dt = r.clicks[1].time - r.clicks[0].time;
    (r.same_detector() ? w.same : w.diff).push_back(dt);
  }
  return w;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return std::nan("");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

EnsembleSummary summarize(std::span<const TrajectoryResult> results, const HistogramSpec& spec) {
  spec.validate();
  EnsembleSummary s;
  s.n_total = results.size();
  s.normalization = spec.normalization;
  std::vector<double> t1, t2;
  for (const auto& r : results) {
    if (r.censored) {
      ++s.n_censored;
      continue;
    }
    ++s.n_complete;
    t1.push_back(r.clicks[0].time);
    t2.push_back(r.clicks[1].time);
    if (r.same_detector()) {
      ++s.n_same;
      (r.clicks[0].detector == Detector::kA ? s.n_aa : s.n_bb) += 1;
    }
  }
  if (s.n_complete == 0) throw DegenerateSummaryError("no trajectory recorded two clicks");

  const auto n = static_cast<double>(s.n_complete);
  s.f_same = static_cast<double>(s.n_same) / n;
  s.f_diff = 1.0 - s.f_same;
  s.binomial_stderr = std::sqrt(s.f_same * s.f_diff / n);

  const WaitingTimes w = waiting_time_split(results);
  s.mean_dt_same = mean(w.same);
  s.mean_dt_diff = mean(w.diff);
  s.hist_dt_same = make_histogram(w.same, spec);
  s.hist_dt_diff = make_histogram(w.diff, spec);

  // T1 and T2 share one range so both can be drawn on the same axis.
  HistogramSpec shared = spec;
  if (!(shared.t_max > shared.t_min)) {
    const double hi = *std::max_element(t2.begin(), t2.end());
    shared.t_max = shared.t_min + static_cast<double>(bins_to_cover(shared.t_min, hi, shared.bin_width)) * shared.bin_width;
  }
  s.hist_t1 = make_histogram(t1, shared);
  s.hist_t2 = make_histogram(t2, shared);
  s.shared_time_range = {shared.t_min, shared.t_max};
  return s;
}

BootstrapInterval bootstrap_mean_difference(std::span<const double> xs, std::span<const double> ys,
                                            std::size_t resamples, double confidence, std::uint64_t seed) {
  if (xs.empty() || ys.empty()) throw InvalidArgument("bootstrap needs two non-empty samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must be in (0, 1)");
  std::vector<double> diffs;
  diffs.reserve(resamples);
  RandomStream rng = RandomStream::substream(seed, 0);
  auto resample_mean = [&rng](std::span<const double> v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(v.size()));
      acc += v[std::min(j, v.size() - 1)];
    }
    return acc / static_cast<double>(v.size());
  };
  for (std::size_t b = 0; b < resamples; ++b) diffs.push_back(resample_mean(ys) - resample_mean(xs));
  std::sort(diffs.begin(), diffs.end());
  const double alpha = 0.5 * (1.0 - confidence);
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(diffs.size() - 1)));
    return diffs[idx];
  };
  return {mean(ys) - mean(xs), quantile(alpha), quantile(1.0 - alpha)};
}

}  // namespace homcascade
