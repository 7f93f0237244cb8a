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

#include "winexp/auctions.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "winexp/discretization.h"
#include "winexp/errors.h"
#include "winexp/hindsight.h"

namespace winexp {
namespace {

const BidGrid& TenthGrid() {
  static const BidGrid grid = MakeGrid(0.1);
  return grid;
}

TEST(SecondPrice, ZeroBidLoses) {
  const std::vector<double> others = {0.0, 0.3};
  const auto f = SecondPriceRound(TenthGrid(), 0, others, 0.9);
  EXPECT_EQ(f.realized_outcome, kLoseOutcome);
  EXPECT_EQ(f.realized_utility, 0.0);
  EXPECT_FALSE(f.value_revealed.has_value());
}

TEST(SecondPrice, WinnerPaysHighestOtherBid) {
  const std::vector<double> others = {0.1, 0.4};
  const auto f = SecondPriceRound(TenthGrid(), 6, others, 0.9);
  EXPECT_EQ(f.realized_outcome, kWinOutcome);
  EXPECT_NEAR(f.payments(6, kWinOutcome), 0.4, 1e-15);
  EXPECT_NEAR(f.realized_utility, 0.5, 1e-12);
  ASSERT_TRUE(f.value_revealed.has_value());
  EXPECT_EQ(*f.value_revealed, 0.9);
}

TEST(SecondPrice, TieLoses) {
  const std::vector<double> others = {TenthGrid()[4]};
  const auto f = SecondPriceRound(TenthGrid(), 4, others, 0.9);
  EXPECT_EQ(f.realized_outcome, kLoseOutcome);
  EXPECT_EQ(f.realized_utility, 0.0);
}

TEST(FirstPrice, BidAtValueEarnsNothing) {
  const std::vector<double> others = {0.2};
  const auto f = FirstPriceRound(TenthGrid(), 7, others, TenthGrid()[7]);
  EXPECT_EQ(f.realized_outcome, kWinOutcome);
  EXPECT_NEAR(f.realized_utility, 0.0, 1e-15);
}

TEST(FirstPrice, WinnerPaysOwnBid) {
  const std::vector<double> others = {0.3};
  const auto f = FirstPriceRound(TenthGrid(), 5, others, 0.8);
  EXPECT_NEAR(f.realized_utility, 0.3, 1e-12);
}

TEST(AllPay, LoserPaysOwnBid) {
  const std::vector<double> others = {0.9};
  const auto f = AllPayRound(TenthGrid(), 2, others, 0.5);
  EXPECT_EQ(f.realized_outcome, kLoseOutcome);
  EXPECT_NEAR(f.realized_utility, -0.2, 1e-12);
}

TEST(AllPay, WinnerKeepsValueMinusBid) {
  const std::vector<double> others = {0.05};
  const auto f = AllPayRound(TenthGrid(), 1, others, 1.0);
  EXPECT_EQ(f.realized_outcome, kWinOutcome);
  EXPECT_NEAR(f.realized_utility, 0.9, 1e-12);
}

// Allocation is the step 1{b > B_t}; the expected utility assembled from the
// curves equals the direct auction rule at every grid bid.
TEST(SingleItem, CurvesMatchDirectRules) {
  Rng rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BidGrid& grid = TenthGrid();
  for (int i = 0; i < 500; ++i) {
    const std::vector<double> others = {unit(rng), unit(rng), unit(rng)};
    const double highest = *std::max_element(others.begin(), others.end());
    const double v = unit(rng);
    const auto sp = SecondPriceRound(grid, 0, others, v);
    const auto fp = FirstPriceRound(grid, 0, others, v);
    const auto ap = AllPayRound(grid, 0, others, v);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const bool win = grid[b] > highest;
      ASSERT_EQ(sp.alloc(b, kWinOutcome), win ? 1.0 : 0.0);
      ASSERT_EQ(fp.alloc(b, kWinOutcome), win ? 1.0 : 0.0);
      ASSERT_EQ(ap.alloc(b, kWinOutcome), win ? 1.0 : 0.0);
      auto expected = [&](const RoundFeedback& f) {
        double u = 0.0;
        for (std::size_t o = 0; o < 2; ++o) u += f.alloc(b, o) * f.rewards(b, o);
        return u;
      };
      ASSERT_NEAR(expected(sp), win ? v - highest : 0.0, 1e-12);
      ASSERT_NEAR(expected(fp), win ? v - grid[b] : 0.0, 1e-12);
      ASSERT_NEAR(expected(ap), (win ? v : 0.0) - grid[b], 1e-12);
      ASSERT_NEAR(sp.UtilityAt(b), expected(sp), 1e-12);
    }
  }
}

TEST(SingleItem, FirstAndAllPayHindsightMatchClosedForm) {
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BidGrid& grid = TenthGrid();
  constexpr int kRounds = 200;
  HindsightTracker first(grid.size()), allpay(grid.size());
  std::vector<double> highs, values;
  for (int t = 0; t < kRounds; ++t) {
    const std::vector<double> others = {unit(rng), unit(rng)};
    const double v = unit(rng);
    highs.push_back(std::max(others[0], others[1]));
    values.push_back(v);
    const auto fp = FirstPriceRound(grid, 0, others, v);
    const auto ap = AllPayRound(grid, 0, others, v);
    first.Record(fp.Counterfactual(), fp.realized_utility);
    allpay.Record(ap.Counterfactual(), ap.realized_utility);
  }
  for (std::size_t b = 0; b < grid.size(); ++b) {
    double value_wins = 0.0, wins = 0.0;
    for (int t = 0; t < kRounds; ++t) {
      if (grid[b] > highs[t]) {
        value_wins += values[t];
        wins += 1.0;
      }
    }
    const double n = kRounds;
    EXPECT_NEAR(first.cumulative()[b] / n, value_wins / n - grid[b] * wins / n, 1e-12);
    EXPECT_NEAR(allpay.cumulative()[b] / n, value_wins / n - grid[b], 1e-12);
  }
}

TEST(RealizeOutcome, FirstCumulativeAboveCoupling) {
  const std::vector<double> row = {0.2, 0.3, 0.5};
  EXPECT_EQ(RealizeOutcome(row, 0.0), 0u);
  EXPECT_EQ(RealizeOutcome(row, 0.2), 1u);
  EXPECT_EQ(RealizeOutcome(row, 0.49), 1u);
  EXPECT_EQ(RealizeOutcome(row, 0.5), 2u);
  EXPECT_EQ(RealizeOutcome(row, 0.999999), 2u);
}

TEST(UnitDemand, SingleItemReducesToWinOnly) {
  const BidGrid& grid = TenthGrid();
  const std::vector<double> weights = {0.8};
  const std::vector<double> prices = {0.5};
  const UnitDemandRule rule = LinearUnitDemandRule(grid, weights, prices);
  const std::vector<double> values = {0.9};
  const auto f = UnitDemandRound(grid, 5, rule.allocation, rule.item_payments, values, 0.3);
  ASSERT_EQ(f.alloc.num_outcomes(), 2u);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    EXPECT_NEAR(f.alloc(b, 0), 0.8 * grid[b], 1e-15);
    EXPECT_NEAR(f.rewards(b, 0), 0.9 - 0.5 * grid[b], 1e-15);
    EXPECT_EQ(f.rewards(b, 1), 0.0);
  }
  EXPECT_EQ(f.realized_outcome, 0u);  // 0.3 < 0.8 * 0.5
}

TEST(UnitDemand, DeterministicAllocationAlwaysRealizesThatItem) {
  const BidGrid& grid = TenthGrid();
  BidOutcomeTable alloc(grid.size(), 3), pay(grid.size(), 2);
  for (std::size_t b = 0; b < grid.size(); ++b) alloc(b, 1) = 1.0;
  const std::vector<double> values = {0.3, 0.6};
  for (double u : {0.0, 0.25, 0.5, 0.999}) {
    const auto f = UnitDemandRound(grid, 4, alloc, pay, values, u);
    EXPECT_EQ(f.realized_outcome, 1u);
    EXPECT_NEAR(f.realized_utility, 0.6, 1e-15);
  }
}

// Integrating the coupling variate exactly over the breakpoints of the
// cumulative allocation reproduces sum_o x(b, o) r(b, o).
TEST(UnitDemand, ExpectedUtilityOverCoupling) {
  Rng rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BidGrid& grid = TenthGrid();
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 1 + i % 4;
    std::vector<double> w(k), p(k), v(k);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      w[j] = unit(rng);
      total += w[j];
      p[j] = unit(rng);
      v[j] = unit(rng);
    }
    for (double& x : w) x /= total * (1.0 + unit(rng));
    const UnitDemandRule rule = LinearUnitDemandRule(grid, w, p);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      std::vector<double> cuts = {0.0};
      double direct = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double x = w[j] * grid[b];
        cuts.push_back(cuts.back() + x);
        direct += x * (v[j] - p[j] * grid[b]);
      }
      cuts.push_back(1.0);
      double integrated = 0.0;
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double width = cuts[c + 1] - cuts[c];
        if (width <= 0.0) continue;
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        const auto f = UnitDemandRound(grid, b, rule.allocation, rule.item_payments, v, mid);
        integrated += width * f.realized_utility;
      }
      ASSERT_NEAR(integrated, direct, 1e-12);
    }
  }
}

TEST(UnitDemand, RejectsRowsNotSummingToOne) {
  const BidGrid& grid = TenthGrid();
  BidOutcomeTable alloc(grid.size(), 2, 0.7), pay(grid.size(), 1);
  const std::vector<double> values = {0.5};
  EXPECT_THROW(UnitDemandRound(grid, 0, alloc, pay, values, 0.5), InvalidArgument);
}

GspRound HandRankedRound() {
  GspRound r;
  r.learner_score = 1.0;
  r.others = {{0.9, 1.0}, {0.5, 1.0}, {0.2, 1.0}};
  r.reserve = 0.0;
  r.slot_ctrs = {0.8, 0.5, 0.3};
  r.click_threshold = 0.0;
  return r;
}

TEST(Gsp, HandRankedInstance) {
  const BidGrid& grid = TenthGrid();
  const GspCurves c = ComputeGspCurves(grid, HandRankedRound());
  const std::size_t b = grid.NearestIndex(0.7);
  EXPECT_EQ(c.slot[b], 2u);
  EXPECT_NEAR(c.ctr[b], 0.5, 1e-15);
  EXPECT_NEAR(c.payment[b], 0.5, 1e-12);
  const std::size_t top = grid.NearestIndex(1.0);
  EXPECT_EQ(c.slot[top], 1u);
  EXPECT_NEAR(c.payment[top], 0.9, 1e-12);
  const std::size_t low = grid.NearestIndex(0.1);
  EXPECT_EQ(c.slot[low], 0u);
  EXPECT_EQ(c.ctr[low], 0.0);
}

TEST(Gsp, EveryBidBelowReserveIsUnslotted) {
  GspRound r = HandRankedRound();
  r.learner_score = 0.1;
  r.reserve = 0.5;
  const GspCurves c = ComputeGspCurves(TenthGrid(), r);
  for (std::size_t b = 0; b < c.ctr.size(); ++b) {
    EXPECT_EQ(c.ctr[b], 0.0);
    EXPECT_EQ(c.slot[b], 0u);
  }
  const auto f = GspRoundFeedback(TenthGrid(), 10, r, 0.9);
  EXPECT_EQ(f.realized_outcome, kLoseOutcome);
  EXPECT_EQ(f.realized_utility, 0.0);
}

GspRound RandomGspRound(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GspRound r;
  r.learner_score = unit(rng);
  for (int j = 0; j < 19; ++j) r.others.push_back({unit(rng), unit(rng)});
  r.reserve = 0.1 * unit(rng);
  r.slot_ctrs = {unit(rng), unit(rng), unit(rng)};
  std::sort(r.slot_ctrs.begin(), r.slot_ctrs.end(), std::greater<>());
  r.click_threshold = unit(rng);
  return r;
}

TEST(Gsp, SlotsInvariantToJointRescaling) {
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const GspRound r = RandomGspRound(rng);
    GspRound scaled = r;
    const double c = 0.5;
    scaled.learner_score *= c;
    scaled.reserve *= c;
    for (auto& o : scaled.others) o.score *= c;
    const GspCurves a = ComputeGspCurves(TenthGrid(), r);
    const GspCurves b = ComputeGspCurves(TenthGrid(), scaled);
    ASSERT_EQ(a.slot, b.slot);
    for (std::size_t k = 0; k < a.payment.size(); ++k) {
      ASSERT_NEAR(a.payment[k], b.payment[k], 1e-12);
    }
  }
}

TEST(Gsp, PaymentBelowBidAndMonotoneInSlot) {
  Rng rng(7);
  const BidGrid& grid = TenthGrid();
  for (int i = 0; i < 500; ++i) {
    const GspCurves c = ComputeGspCurves(grid, RandomGspRound(rng));
    for (std::size_t b = 0; b < grid.size(); ++b) {
      ASSERT_LE(c.payment[b], grid[b] + 1e-12);
      for (std::size_t b2 = 0; b2 < grid.size(); ++b2) {
        if (c.slot[b] != 0 && c.slot[b2] != 0 && c.slot[b2] < c.slot[b]) {
          ASSERT_GE(c.payment[b2], c.payment[b] - 1e-12);
        }
      }
    }
  }
}

TEST(Gsp, ClicksAreMonotoneInCtr) {
  Rng rng(8);
  const BidGrid& grid = TenthGrid();
  for (int i = 0; i < 300; ++i) {
    const GspRound r = RandomGspRound(rng);
    const GspCurves c = ComputeGspCurves(grid, r);
    const auto f = GspRoundFeedback(grid, 0, c, r.click_threshold, 0.7);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      for (std::size_t b2 = 0; b2 < grid.size(); ++b2) {
        if (f.OutcomeAt(b) == kWinOutcome && c.ctr[b2] >= c.ctr[b]) {
          ASSERT_EQ(f.OutcomeAt(b2), kWinOutcome);
        }
      }
    }
  }
}

TEST(Gsp, ValueRevealedOnlyOnClick) {
  Rng rng(9);
  const BidGrid& grid = TenthGrid();
  for (int i = 0; i < 300; ++i) {
    const GspRound r = RandomGspRound(rng);
    const auto f = GspRoundFeedback(grid, i % grid.size(), r, 0.6);
    ASSERT_EQ(f.value_revealed.has_value(), f.realized_outcome == kWinOutcome);
  }
}

TEST(Gsp, ValidateRejectsMalformedRounds) {
  GspRound r = HandRankedRound();
  r.slot_ctrs = {0.3, 0.5};
  EXPECT_THROW(r.Validate(), InvalidArgument);
  r = HandRankedRound();
  r.reserve = -0.1;
  EXPECT_THROW(r.Validate(), InvalidArgument);
}

GspCurves FlatCurves(double ctr, double payment) {
  GspCurves c;
  const std::size_t n = TenthGrid().size();
  c.ctr.assign(n, ctr);
  c.payment.assign(n, payment);
  c.slot.assign(n, 1);
  return c;
}

TEST(BatchSponsored, TenContestsFourClicks) {
  const GspCurves c = FlatCurves(0.5, 0.1);
  std::vector<BatchContest> contests;
  const double clicked_values[] = {0.2, 0.4, 0.6, 0.8};
  for (double v : clicked_values) contests.push_back({0.1, v});
  for (int i = 0; i < 6; ++i) contests.push_back({0.9, 0.3});
  const auto res = BatchSponsoredRound(TenthGrid(), 3, c, contests, 10);
  EXPECT_NEAR(res.batch.frequencies[kWinOutcome], 0.4, 1e-15);
  EXPECT_NEAR(res.batch.frequencies[kLoseOutcome], 0.6, 1e-15);
  EXPECT_NEAR(res.batch.conditional_rewards(3, kWinOutcome), 0.5 - 0.1, 1e-12);
  EXPECT_EQ(res.batch.conditional_rewards(3, kLoseOutcome), 0.0);
  EXPECT_NEAR(res.realized_utility, (2.0 - 4 * 0.1) / 10.0, 1e-12);
}

TEST(BatchSponsored, SingleContestIsAnIndicator) {
  const GspCurves c = FlatCurves(0.5, 0.2);
  const std::vector<BatchContest> contests = {{0.3, 0.7}};
  const auto res = BatchSponsoredRound(TenthGrid(), 3, c, contests, 1);
  EXPECT_EQ(res.batch.frequencies[kWinOutcome], 1.0);
  EXPECT_NEAR(res.batch.conditional_rewards(0, kWinOutcome), 0.5, 1e-12);
}

TEST(BatchSponsored, FrequenciesSumToOne) {
  Rng rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const GspCurves c = ComputeGspCurves(TenthGrid(), RandomGspRound(rng));
    std::vector<BatchContest> contests(1 + i % 7);
    for (auto& k : contests) k = {unit(rng), unit(rng)};
    const auto res = BatchSponsoredRound(TenthGrid(), i % 11, c, contests, 7);
    double total = 0.0;
    for (double f : res.batch.frequencies) total += f;
    ASSERT_NEAR(total, 1.0, 1e-15);
  }
}

TEST(BatchSponsored, RejectsEmptyAndOversizedBatches) {
  const GspCurves c = FlatCurves(0.5, 0.2);
  EXPECT_THROW(BatchSponsoredRound(TenthGrid(), 0, c, {}, 3), InvalidArgument);
  const std::vector<BatchContest> contests(4, BatchContest{0.1, 0.5});
  EXPECT_THROW(BatchSponsoredRound(TenthGrid(), 0, c, contests, 3), InvalidArgument);
}

TEST(EnvironmentKind, TagsRoundTrip) {
  for (auto k : {EnvironmentKind::kSecondPrice, EnvironmentKind::kFirstPrice,
                 EnvironmentKind::kAllPay, EnvironmentKind::kUnitDemand,
                 EnvironmentKind::kGsp, EnvironmentKind::kGspBatch}) {
    EXPECT_EQ(ParseEnvironmentKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseEnvironmentKind("vickrey"), ConfigError);
}

}  // namespace
}  // namespace winexp
