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
#include <span>
#include <utility>
#include <vector>

#include "homcascade/trajectory.hpp"

namespace homcascade {

enum class Normalization { kCounts, kFrequency };

struct HistogramSpec {
  double bin_width = 0.5;
  double t_min = 0.0;
  /// Upper edge; values <= t_min extend the range to cover the data.
  double t_max = 0.0;
  Normalization normalization = Normalization::kCounts;

  void validate() const;
};

/// Left-closed, right-open bins [t_min + i w, t_min + (i + 1) w).
struct Histogram {
  double t_min = 0.0;
  double bin_width = 0.5;
  std::vector<std::uint64_t> counts;
  /// Events outside [t_min, t_max) when the range was fixed by the caller.
  std::uint64_t overflow = 0;

  double left(std::size_t i) const { return t_min + static_cast<double>(i) * bin_width; }
  double right(std::size_t i) const { return left(i + 1); }
  std::uint64_t total() const;
};

/// Bins samples; a spec with t_max <= t_min sizes the range to the data.
Histogram make_histogram(std::span<const double> samples, const HistogramSpec& spec);

struct EnsembleSummary {
  std::size_t n_total = 0;
  std::size_t n_complete = 0;
  std::size_t n_censored = 0;
  std::size_t n_same = 0;
  std::size_t n_aa = 0;
  std::size_t n_bb = 0;
  double f_same = 0.0;
  double f_diff = 0.0;
  /// sqrt(f (1 - f) / n_complete).
  double binomial_stderr = 0.0;
  double mean_dt_same = 0.0;
  double mean_dt_diff = 0.0;
  Histogram hist_t1;
  Histogram hist_t2;
  Histogram hist_dt_same;
  Histogram hist_dt_diff;
  /// Common [lo, hi) range for drawing T1 and T2 on the same axis.
  std::pair<double, double> shared_time_range{0.0, 0.0};
  Normalization normalization = Normalization::kCounts;
};

/// Censored records count toward n_censored only. Throws
/// DegenerateSummaryError if no record is complete.
EnsembleSummary summarize(std::span<const TrajectoryResult> results, const HistogramSpec& spec = {});

struct WaitingTimes {
  std::vector<double> same;  ///< T2 - T1 for aa / bb records
  std::vector<double> diff;  ///< T2 - T1 for ab / ba records
};

/// Splits complete records by outcome class; censored ones are skipped.
WaitingTimes waiting_time_split(std::span<const TrajectoryResult> results);

double mean(std::span<const double> xs);

struct BootstrapInterval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Percentile bootstrap of mean(ys) - mean(xs) at the given two-sided
/// confidence level.
BootstrapInterval bootstrap_mean_difference(std::span<const double> xs, std::span<const double> ys,
                                            std::size_t resamples, double confidence, std::uint64_t seed);

}  // namespace homcascade
