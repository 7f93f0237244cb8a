// Copyright 2026 The Win-Exp Lab Authors. All rights reserved.
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

#include "winexp/learner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "winexp/discretization.h"
#include "winexp/errors.h"
#include "winexp/estimators.h"

namespace winexp {
namespace {

TEST(StepSize, WinOnlyFormula) {
  const double eta = StepSize(EstimatorKind::kWinOnly, 5000, 101, 2);
  EXPECT_NEAR(eta, std::sqrt(2.0 * std::log(101.0) / 25000.0), 1e-15);
  EXPECT_NEAR(eta, 0.01921, 5e-6);
}

TEST(StepSize, OutcomeFormula) {
  const double eta = StepSize(EstimatorKind::kOutcome, 5000, 101, 2);
  EXPECT_NEAR(eta, std::sqrt(std::log(101.0) / 20000.0), 1e-15);
  EXPECT_NEAR(eta, 0.01519, 5e-6);
}

TEST(StepSize, GraphWithSelfLoopsOnly) {
  const double eta = StepSize(EstimatorKind::kGraph, 1000, 11, 4, 4);
  EXPECT_GT(eta, 0.0);
  EXPECT_TRUE(std::isfinite(eta));
  EXPECT_THROW(StepSize(EstimatorKind::kGraph, 1000, 11, 4), InvalidArgument);
}

TEST(StepSize, Exp3Formula) {
  EXPECT_NEAR(StepSize(EstimatorKind::kExp3, 2000, 101, 2),
              std::sqrt(2.0 * std::log(101.0) / (2000.0 * 101.0)), 1e-15);
}

TEST(EstimatorKind, TagsRoundTrip) {
  for (EstimatorKind k :
       {EstimatorKind::kWinOnly, EstimatorKind::kOutcome, EstimatorKind::kBatch,
        EstimatorKind::kBatchMean, EstimatorKind::kBatchScaled, EstimatorKind::kGraph,
        EstimatorKind::kExp3}) {
    EXPECT_EQ(ParseEstimatorKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseEstimatorKind("winexp"), ConfigError);
}

TEST(Learner, ZeroInformationRoundLeavesDistributionUnchanged) {
  const BidGrid grid = MakeGrid(0.25);
  Learner learner(grid, EstimatorKind::kWinOnly, 0.1, 10);
  const std::vector<double> x(grid.size(), 0.5);
  const std::vector<double> r(grid.size(), 1.0);
  learner.Update(WinOnlyFeedback{x, true, r});
  for (std::size_t b = 0; b < grid.size(); ++b) {
    EXPECT_NEAR(learner.distribution()[b], 0.2, 1e-12);
  }
  EXPECT_EQ(learner.round(), 1u);
}

TEST(Learner, RepeatedFavourableFeedbackRaisesMassEveryRound) {
  const BidGrid grid = MakeGrid(1.0);
  Learner learner(grid, EstimatorKind::kOutcome, 0.1, 50);
  const auto alloc = AllocationCurve::Binary(std::vector<double>{1.0, 1.0});
  const std::vector<double> reward = {0.1, 0.9};
  double previous = learner.distribution()[1];
  for (int t = 0; t < 50; ++t) {
    learner.Update(OutcomeFeedback{alloc, kWinOutcome, reward});
    EXPECT_GT(learner.distribution()[1], previous);
    previous = learner.distribution()[1];
  }
}

TEST(Learner, UpdateReturnsTheEstimateUsed) {
  const BidGrid grid = MakeGrid(1.0);
  Learner learner(grid, EstimatorKind::kWinOnly, 0.1, 5);
  const std::vector<double> x = {0.2, 0.8};
  const auto expected = WinOnlyEstimate(learner.distribution(), x, false, {});
  const auto& used = learner.Update(WinOnlyFeedback{x, false, {}});
  ASSERT_EQ(used.size(), expected.size());
  for (std::size_t b = 0; b < used.size(); ++b) EXPECT_DOUBLE_EQ(used[b], expected[b]);
}

TEST(Learner, TrajectoryIsReproducible) {
  const BidGrid grid = MakeGrid(0.1);
  auto run = [&] {
    Learner learner(grid, EstimatorKind::kExp3, 0.05, 200);
    Rng rng(1234);
    std::vector<std::size_t> bids;
    for (int t = 0; t < 200; ++t) {
      const std::size_t b = learner.SampleBid(rng);
      bids.push_back(b);
      learner.Update(BanditFeedback{b, grid[b] * 0.5});
    }
    return std::make_pair(bids, std::vector<double>(learner.distribution().probs().begin(),
                                                    learner.distribution().probs().end()));
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

TEST(Learner, RejectsMismatchedFeedbackAndOverrun) {
  const BidGrid grid = MakeGrid(1.0);
  Learner learner(grid, EstimatorKind::kWinOnly, 0.1, 1);
  EXPECT_THROW(learner.Update(BanditFeedback{0, 0.5}), ConfigError);
  const std::vector<double> x = {0.2, 0.8};
  learner.Update(WinOnlyFeedback{x, false, {}});
  EXPECT_THROW(learner.Update(WinOnlyFeedback{x, false, {}}), InvariantViolation);
}

TEST(DoublingSchedule, ShortRunWithoutRestarts) {
  DoublingSchedule s;
  EXPECT_FALSE(s.Advance(1, 1.0, 1.0));
  EXPECT_EQ(s.restarts(), 0u);
}

TEST(DoublingSchedule, EightRoundsDoubleTheHorizonThreeTimes) {
  DoublingSchedule s;
  for (std::size_t t = 1; t <= 8; ++t) s.Advance(t, 0.0, 1.0);
  EXPECT_EQ(s.horizon_restarts(), 3u);
  EXPECT_EQ(s.horizon_bound(), 8.0);
  EXPECT_EQ(s.log_restarts(), 0u);
}

TEST(DoublingSchedule, ShrinkingGapRaisesTheLogBound) {
  DoublingSchedule s;
  s.Advance(1, 0.0, 1.0);
  EXPECT_TRUE(s.Advance(2, 0.0, 0.01));
  EXPECT_GE(s.log_bound(), std::log(100.0));
  EXPECT_LE(s.StageResolution(), 0.01);
  EXPECT_EQ(s.log_restarts(), 1u);
}

TEST(DoublingSchedule, StageStepSizeFormula) {
  DoublingSchedule s;
  for (std::size_t t = 1; t <= 4; ++t) s.Advance(t, 0.0, 0.5);
  EXPECT_NEAR(s.StageStepSize(2), std::sqrt(s.log_bound() / (2.0 * 4.0 * 2.0)), 1e-15);
}

TEST(DoublingSchedule, EnforcesLimits) {
  DoublingSchedule s(DoublingLimits{4, 64.0});
  EXPECT_THROW(s.Advance(5, 0.0, 1.0), ConfigError);
  DoublingSchedule tight(DoublingLimits{1024, 2.0});
  EXPECT_THROW(tight.Advance(1, 0.0, 1e-3), ConfigError);
}

}  // namespace
}  // namespace winexp
