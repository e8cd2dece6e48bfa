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

#include <gtest/gtest.h>

#include "homcascade/errors.hpp"

namespace homcascade {
namespace {

TrajectoryResult record(Detector d1, double t1, Detector d2, double t2) {
  TrajectoryResult r;
  r.clicks = {{d1, t1}, {d2, t2}};
  r.censored = false;
  return r;
}

TEST(Stats, HandBuiltPair) {
  const std::vector<TrajectoryResult> rs{record(Detector::kA, 1.0, Detector::kA, 1.5),
                                         record(Detector::kA, 1.0, Detector::kB, 3.0)};
  const EnsembleSummary s = summarize(rs);
  EXPECT_EQ(s.n_total, 2u);
  EXPECT_EQ(s.n_complete, 2u);
  EXPECT_DOUBLE_EQ(s.f_same, 0.5);
  EXPECT_DOUBLE_EQ(s.f_diff, 0.5);
  EXPECT_DOUBLE_EQ(s.binomial_stderr, 0.5 / std::sqrt(2.0));
  EXPECT_EQ(s.n_aa, 1u);
  EXPECT_EQ(s.n_bb, 0u);
  EXPECT_EQ(s.hist_t1.total(), 2u);
  EXPECT_EQ(s.hist_t2.total(), 2u);
  EXPECT_EQ(s.hist_dt_same.total() + s.hist_dt_diff.total(), 2u);
  EXPECT_DOUBLE_EQ(s.mean_dt_same, 0.5);
  EXPECT_DOUBLE_EQ(s.mean_dt_diff, 2.0);
  EXPECT_EQ(s.hist_t1.counts.size(), s.hist_t2.counts.size());
}

TEST(Stats, WaitingTimeSplit) {
  std::vector<TrajectoryResult> rs{record(Detector::kA, 1.0, Detector::kA, 1.5),
                                   record(Detector::kA, 1.0, Detector::kB, 3.0), TrajectoryResult{}};
  const WaitingTimes w = waiting_time_split(rs);
  ASSERT_EQ(w.same.size(), 1u);
  ASSERT_EQ(w.diff.size(), 1u);
  EXPECT_DOUBLE_EQ(w.same[0], 0.5);
  EXPECT_DOUBLE_EQ(w.diff[0], 2.0);
}

TEST(Stats, CensoredRecordsAreCountedButExcluded) {
  TrajectoryResult partial;
  partial.clicks = {{Detector::kB, 4.0}};
  const std::vector<TrajectoryResult> rs{record(Detector::kB, 0.2, Detector::kB, 0.3), partial, TrajectoryResult{}};
  const EnsembleSummary s = summarize(rs);
  EXPECT_EQ(s.n_total, 3u);
  EXPECT_EQ(s.n_censored, 2u);
  EXPECT_EQ(s.n_complete, 1u);
  EXPECT_EQ(s.n_bb, 1u);
  EXPECT_DOUBLE_EQ(s.f_same, 1.0);
}

TEST(Stats, AllCensoredIsDegenerate) {
  const std::vector<TrajectoryResult> rs(5);
  EXPECT_THROW(summarize(rs), DegenerateSummaryError);
}

TEST(Stats, LeftClosedBins) {
  const std::vector<double> xs{0.0, 0.49, 0.5, 0.99, 1.0};
  const Histogram h = make_histogram(xs, {0.5});
  ASSERT_EQ(h.counts.size(), 3u);
  EXPECT_EQ(h.counts[0], 2u);
  EXPECT_EQ(h.counts[1], 2u);
  EXPECT_EQ(h.counts[2], 1u);
  EXPECT_EQ(h.overflow, 0u);

  HistogramSpec fixed{0.5, 0.0, 1.0};
  const Histogram f = make_histogram(xs, fixed);
  EXPECT_EQ(f.counts.size(), 2u);
  EXPECT_EQ(f.overflow, 1u);
  EXPECT_DOUBLE_EQ(f.right(1), 1.0);
}

TEST(Stats, HistogramSpecValidation) {
  EXPECT_THROW(make_histogram({}, {0.0}), InvalidArgument);
  EXPECT_THROW(make_histogram({}, {0.5, 2.0, 1.0}), InvalidArgument);
  EXPECT_TRUE(make_histogram({}, {0.5}).counts.empty());
}

TEST(Stats, BootstrapSeparatesShiftedSamples) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 400; ++i) {
    xs.push_back(1.0 + 0.01 * (i % 50));
    ys.push_back(1.3 + 0.01 * (i % 50));
  }
  const BootstrapInterval ci = bootstrap_mean_difference(xs, ys, 2000, 0.99, 5);
  EXPECT_NEAR(ci.estimate, 0.3, 1e-12);
  EXPECT_GT(ci.lower, 0.25);
  EXPECT_LT(ci.upper, 0.35);
  EXPECT_LE(ci.lower, ci.estimate);
  EXPECT_GE(ci.upper, ci.estimate);
  const BootstrapInterval again = bootstrap_mean_difference(xs, ys, 2000, 0.99, 5);
  EXPECT_EQ(ci.lower, again.lower);
  EXPECT_THROW(bootstrap_mean_difference({}, ys, 10, 0.9, 1), InvalidArgument);
}

}  // namespace
}  // namespace homcascade
