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

#include "winexp/discretization.h"

#include <gtest/gtest.h>

#include <cmath>

#include "winexp/bid_grid.h"
#include "winexp/errors.h"

namespace winexp {
namespace {

TEST(BidGrid, HalfResolution) {
  const BidGrid g = MakeGrid(0.5);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[1], 0.5);
  EXPECT_EQ(g[2], 1.0);
  EXPECT_EQ(g.resolution(), 0.5);
}

TEST(BidGrid, HundredthResolutionHas101Points) {
  const BidGrid g = MakeGrid(0.01);
  EXPECT_EQ(g.size(), 101u);
  EXPECT_EQ(g[100], 1.0);
  EXPECT_DOUBLE_EQ(g.resolution(), 0.01);
}

TEST(BidGrid, NonDividingResolutionStopsBelowOne) {
  const BidGrid g = MakeGrid(0.3);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_NEAR(g[3], 0.9, 1e-12);
}

TEST(BidGrid, NearestIndexBreaksTiesDownward) {
  const BidGrid g = MakeGrid(0.5);
  EXPECT_EQ(g.NearestIndex(0.25), 0u);
  EXPECT_EQ(g.NearestIndex(0.26), 1u);
  EXPECT_EQ(g.NearestIndex(2.0), 2u);
}

TEST(BidGrid, RejectsInvalidInput) {
  EXPECT_THROW(MakeGrid(0.0), InvalidArgument);
  EXPECT_THROW(MakeGrid(-0.1), InvalidArgument);
  EXPECT_THROW(BidGrid::FromPoints({0.0, 0.3, 0.4}), InvalidArgument);
  EXPECT_THROW(BidGrid::FromPoints({0.5}), InvalidArgument);
}

TEST(ChooseEpsilon, ZeroLipschitzUsesPieceWidth) {
  EXPECT_EQ(ChooseEpsilon({0.0, 0.05, 100}), 0.05);
}

TEST(ChooseEpsilon, LipschitzTermBinds) {
  EXPECT_NEAR(ChooseEpsilon({10.0, 0.05, 100}), 0.001, 1e-15);
}

TEST(ChooseEpsilon, PieceWidthBinds) {
  EXPECT_NEAR(ChooseEpsilon({1.0, 0.01, 10}), 0.01, 1e-15);
}

TEST(DiscretizationErrorBound, Product) {
  EXPECT_EQ(DiscretizationErrorBound(0.001, {0.0, 0.05, 100}), 0.0);
  EXPECT_NEAR(DiscretizationErrorBound(0.001, {10.0, 0.05, 100}), 1.0, 1e-12);
  EXPECT_NEAR(DiscretizationErrorBound(0.001, {10.0, 0.05, 200}),
              2.0 * DiscretizationErrorBound(0.001, {10.0, 0.05, 100}), 1e-12);
}

TEST(DiscretizationErrorBound, RequiresEpsilonBelowPieceWidth) {
  EXPECT_THROW(DiscretizationErrorBound(0.05, {1.0, 0.05, 100}), PreconditionViolated);
}

TEST(GspLipschitzConstant, Formula) {
  EXPECT_NEAR(GspLipschitzConstant(20, 1.0, 0.1), 400.0, 1e-9);
  EXPECT_NEAR(GspLipschitzConstant(40, 1.0, 0.1), 2.0 * GspLipschitzConstant(20, 1.0, 0.1),
              1e-9);
  EXPECT_THROW(GspLipschitzConstant(20, 1.0, 0.0), InvalidArgument);
}

TEST(RegretBound, WinOnlySecondPriceAudit) {
  BoundInputs in;
  in.horizon = 5000;
  in.grid_size = 101;
  const double bound = RegretBound(BoundKind::kWinOnly, in);
  EXPECT_NEAR(bound, 4.0 * std::sqrt(5000.0 * std::log(101.0)), 1e-9);
  EXPECT_NEAR(bound, 607.6, 0.1);
}

TEST(RegretBound, TwoOutcomeBoundEqualsWinOnly) {
  BoundInputs in;
  in.horizon = 1234;
  in.grid_size = 57;
  in.num_outcomes = 2;
  EXPECT_NEAR(RegretBound(BoundKind::kOutcome, in), RegretBound(BoundKind::kWinOnly, in),
              1e-9);
}

TEST(RegretBound, ContinuousWithoutLipschitzTerm) {
  BoundInputs in;
  in.horizon = 1000;
  in.num_outcomes = 2;
  in.lipschitz = 0.0;
  in.piece_width = 0.02;
  EXPECT_NEAR(RegretBound(BoundKind::kContinuous, in),
              2.0 * std::sqrt(2.0 * 1000.0 * 2.0 * std::log(50.0)) + 1.0, 1e-9);
}

TEST(RegretBound, GraphAndDoubling) {
  BoundInputs in;
  in.horizon = 100;
  in.grid_size = 11;
  in.num_outcomes = 5;
  in.independence_number = 2;
  EXPECT_NEAR(RegretBound(BoundKind::kGraph, in),
              2.0 * std::sqrt(8.0 * 2.0 * 100.0 * std::log(11.0) *
                              std::log(16.0 * 25.0 * 100.0 / 2.0)) +
                  1.0,
              1e-9);
  in.independence_number.reset();
  EXPECT_THROW(RegretBound(BoundKind::kGraph, in), ConfigError);
  in.num_outcomes = 2;
  in.lipschitz = 3.0;
  in.piece_width = 0.5;
  EXPECT_NEAR(RegretBound(BoundKind::kDoubling, in),
              25.0 * std::sqrt(2.0 * 100.0 * 2.0 * std::log(300.0)) + 1.0, 1e-9);
}

TEST(ParseBoundKind, KnownAndUnknownTags) {
  EXPECT_EQ(ParseBoundKind("graph"), BoundKind::kGraph);
  EXPECT_EQ(ParseBoundKind("doubling"), BoundKind::kDoubling);
  EXPECT_THROW(ParseBoundKind("nope"), ConfigError);
}

}  // namespace
}  // namespace winexp
