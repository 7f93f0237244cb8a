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

#include <algorithm>
#include <array>
#include <functional>
#include <utility>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr std::array<std::pair<EnvironmentKind, std::string_view>, 6>
    kEnvironmentTags{{
        {EnvironmentKind::kSecondPrice, "second-price"},
        {EnvironmentKind::kFirstPrice, "first-price"},
        {EnvironmentKind::kAllPay, "all-pay"},
        {EnvironmentKind::kUnitDemand, "unit-demand"},
        {EnvironmentKind::kGsp, "gsp"},
        {EnvironmentKind::kGspBatch, "gsp-batch"},
    }};

void CheckUnit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument(std::string(what) + " outside [0, 1]");
  }
}

double HighestOther(std::span<const double> other_bids) {
  double highest = 0.0;
  for (double b : other_bids) {
    CheckUnit(b, "bid");
    highest = std::max(highest, b);
  }
  return highest;
}

RoundFeedback Assemble(AllocationCurve alloc, BidOutcomeTable payments,
                       BidOutcomeTable rewards, double coupling,
                       std::size_t learner_bid,
                       const std::function<std::optional<double>(std::size_t)>&
                           revealed_value) {
  if (learner_bid >= alloc.num_bids()) {
    throw InvalidArgument("learner bid index outside the grid");
  }
  RoundFeedback fb{std::move(alloc), std::move(payments),
                   RewardTable(std::move(rewards)), coupling,
                   learner_bid, 0, std::nullopt, 0.0};
  fb.realized_outcome = fb.OutcomeAt(learner_bid);
  fb.value_revealed = revealed_value(fb.realized_outcome);
  fb.realized_utility = fb.rewards(learner_bid, fb.realized_outcome);
  return fb;
}

// Winner pays win_payment(b), loser pays lose_payment(b).
RoundFeedback SingleItemRound(
    const BidGrid& grid, std::size_t learner_bid,
    std::span<const double> other_bids, double value,
    const std::function<double(double, double)>& win_payment,
    const std::function<double(double)>& lose_payment) {
  CheckUnit(value, "value");
  const double highest = HighestOther(other_bids);
  const std::size_t n = grid.size();
  BidOutcomeTable alloc(n, 2), payments(n, 2), rewards(n, 2);
  for (std::size_t b = 0; b < n; ++b) {
    const bool wins = grid[b] > highest;
    alloc(b, kWinOutcome) = wins ? 1.0 : 0.0;
    alloc(b, kLoseOutcome) = wins ? 0.0 : 1.0;
    payments(b, kWinOutcome) = win_payment(grid[b], highest);
    payments(b, kLoseOutcome) = lose_payment(grid[b]);
    rewards(b, kWinOutcome) = ClampUtility(value - payments(b, kWinOutcome));
    rewards(b, kLoseOutcome) = ClampUtility(-payments(b, kLoseOutcome));
  }
  return Assemble(AllocationCurve(std::move(alloc)), std::move(payments),
                  std::move(rewards), 0.0, learner_bid,
                  [value](std::size_t o) -> std::optional<double> {
                    if (o == kWinOutcome) return value;
                    return std::nullopt;
                  });
}

}  // namespace

std::string_view ToString(EnvironmentKind kind) {
  for (const auto& [k, tag] : kEnvironmentTags) {
    if (k == kind) return tag;
  }
  return "unknown";
}

EnvironmentKind ParseEnvironmentKind(std::string_view tag) {
  for (const auto& [k, name] : kEnvironmentTags) {
    if (name == tag) return k;
  }
  throw ConfigError("unknown environment '" + std::string(tag) + "'");
}

std::size_t RealizeOutcome(std::span<const double> row, double u) {
  double cumulative = 0.0;
  for (std::size_t o = 0; o < row.size(); ++o) {
    cumulative += row[o];
    if (cumulative > u) return o;
  }
  for (std::size_t o = row.size(); o-- > 0;) {
    if (row[o] > 0.0) return o;
  }
  return row.size() - 1;
}

double ClampUtility(double u) { return std::clamp(u, -1.0, 1.0); }

std::size_t RoundFeedback::OutcomeAt(std::size_t bid) const {
  return RealizeOutcome(alloc.table().Row(bid), coupling);
}

double RoundFeedback::UtilityAt(std::size_t bid) const {
  return rewards(bid, OutcomeAt(bid));
}

std::vector<double> RoundFeedback::Counterfactual() const {
  std::vector<double> out(alloc.num_bids());
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = UtilityAt(b);
  return out;
}

RoundFeedback SecondPriceRound(const BidGrid& grid, std::size_t learner_bid,
                               std::span<const double> other_bids,
                               double value) {
  return SingleItemRound(
      grid, learner_bid, other_bids, value,
      [](double b, double highest) { return b > highest ? highest : 0.0; },
      [](double) { return 0.0; });
}

RoundFeedback FirstPriceRound(const BidGrid& grid, std::size_t learner_bid,
                              std::span<const double> other_bids,
                              double value) {
  return SingleItemRound(
      grid, learner_bid, other_bids, value,
      [](double b, double highest) { return b > highest ? b : 0.0; },
      [](double) { return 0.0; });
}

RoundFeedback AllPayRound(const BidGrid& grid, std::size_t learner_bid,
                          std::span<const double> other_bids, double value) {
  return SingleItemRound(
      grid, learner_bid, other_bids, value,
      [](double b, double) { return b; }, [](double b) { return b; });
}

RoundFeedback UnitDemandRound(const BidGrid& grid, std::size_t learner_bid,
                              const BidOutcomeTable& allocation,
                              const BidOutcomeTable& item_payments,
                              std::span<const double> values, double coupling) {
  const std::size_t n = grid.size();
  const std::size_t items = values.size();
  if (items == 0) throw InvalidArgument("unit demand needs at least one item");
  if (allocation.num_bids() != n || allocation.num_outcomes() != items + 1 ||
      item_payments.num_bids() != n || item_payments.num_outcomes() != items) {
    throw InvalidArgument("unit-demand tables do not match grid and items");
  }
  CheckUnit(coupling, "coupling variate");
  for (double v : values) CheckUnit(v, "value");
  AllocationCurve alloc(allocation);
  BidOutcomeTable payments(n, items + 1), rewards(n, items + 1);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t k = 0; k < items; ++k) {
      const double p = item_payments(b, k);
      CheckUnit(p, "payment");
      payments(b, k) = p;
      rewards(b, k) = ClampUtility(values[k] - p);
    }
  }
  std::vector<double> item_values(values.begin(), values.end());
  return Assemble(std::move(alloc), std::move(payments), std::move(rewards),
                  coupling, learner_bid,
                  [item_values](std::size_t o) -> std::optional<double> {
                    if (o < item_values.size()) return item_values[o];
                    return std::nullopt;
                  });
}

UnitDemandRule LinearUnitDemandRule(const BidGrid& grid,
                                    std::span<const double> item_weights,
                                    std::span<const double> item_prices) {
  const std::size_t items = item_weights.size();
  if (items == 0 || item_prices.size() != items) {
    throw InvalidArgument("unit-demand rule needs one weight and price per item");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < items; ++k) {
    CheckUnit(item_weights[k], "item weight");
    CheckUnit(item_prices[k], "item price");
    total += item_weights[k];
  }
  if (total > 1.0 + 1e-12) throw InvalidArgument("item weights sum above one");
  UnitDemandRule rule{BidOutcomeTable(grid.size(), items + 1),
                      BidOutcomeTable(grid.size(), items)};
  for (std::size_t b = 0; b < grid.size(); ++b) {
    double allocated = 0.0;
    for (std::size_t k = 0; k < items; ++k) {
      rule.allocation(b, k) = item_weights[k] * grid[b];
      rule.item_payments(b, k) = item_prices[k] * grid[b];
      allocated += rule.allocation(b, k);
    }
    rule.allocation(b, items) = std::max(0.0, 1.0 - allocated);
  }
  return rule;
}

void GspRound::Validate() const {
  CheckUnit(learner_score, "learner score");
  for (const GspBidder& o : others) {
    CheckUnit(o.bid, "bid");
    CheckUnit(o.score, "score");
  }
  if (!(reserve >= 0.0)) throw InvalidArgument("reserve must be >= 0");
  if (slot_ctrs.empty()) throw InvalidArgument("GSP needs at least one slot");
  for (std::size_t s = 0; s < slot_ctrs.size(); ++s) {
    CheckUnit(slot_ctrs[s], "slot CTR");
    if (s > 0 && slot_ctrs[s] > slot_ctrs[s - 1]) {
      throw InvalidArgument("slot CTRs must be descending");
    }
  }
  CheckUnit(click_threshold, "click threshold");
}

GspCurves ComputeGspCurves(const BidGrid& grid, const GspRound& round) {
  round.Validate();
  if (grid.size() < 2) throw InvalidArgument("GSP needs at least two grid bids");
  std::vector<double> ranks;
  ranks.reserve(round.others.size());
  for (const GspBidder& o : round.others) {
    const double rank = o.score * o.bid;
    if (rank >= round.reserve) ranks.push_back(rank);
  }
  std::sort(ranks.begin(), ranks.end());
  const std::size_t n = grid.size();
  GspCurves curves{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<std::size_t>(n, 0)};
  const double s = round.learner_score;
  if (s <= 0.0) return curves;
  for (std::size_t b = 0; b < n; ++b) {
    const double own = s * grid[b];
    if (own < round.reserve) continue;
    const auto below = std::lower_bound(ranks.begin(), ranks.end(), own);
    const std::size_t ahead = static_cast<std::size_t>(ranks.end() - below);
    const std::size_t slot = ahead + 1;
    if (slot > round.slot_ctrs.size()) continue;
    const double next =
        below == ranks.begin() ? round.reserve : *std::prev(below);
    curves.slot[b] = slot;
    curves.ctr[b] = round.slot_ctrs[slot - 1];
    curves.payment[b] = std::min(next / s, grid[b]);
  }
  return curves;
}

RoundFeedback GspRoundFeedback(const BidGrid& grid, std::size_t learner_bid,
                               const GspCurves& curves, double click_threshold,
                               double value) {
  CheckUnit(value, "value");
  CheckUnit(click_threshold, "click threshold");
  const std::size_t n = grid.size();
  if (curves.ctr.size() != n || curves.payment.size() != n) {
    throw InvalidArgument("GSP curves do not match the grid");
  }
  BidOutcomeTable alloc(n, 2), payments(n, 2), rewards(n, 2);
  for (std::size_t b = 0; b < n; ++b) {
    alloc(b, kWinOutcome) = curves.ctr[b];
    alloc(b, kLoseOutcome) = 1.0 - curves.ctr[b];
    payments(b, kWinOutcome) = curves.payment[b];
    rewards(b, kWinOutcome) = ClampUtility(value - curves.payment[b]);
  }
  return Assemble(AllocationCurve(std::move(alloc)), std::move(payments),
                  std::move(rewards), click_threshold, learner_bid,
                  [value](std::size_t o) -> std::optional<double> {
                    if (o == kWinOutcome) return value;
                    return std::nullopt;
                  });
}

RoundFeedback GspRoundFeedback(const BidGrid& grid, std::size_t learner_bid,
                               const GspRound& round, double value) {
  return GspRoundFeedback(grid, learner_bid, ComputeGspCurves(grid, round),
                          round.click_threshold, value);
}

BatchRoundResult BatchSponsoredRound(const BidGrid& grid,
                                     std::size_t learner_bid,
                                     const GspCurves& curves,
                                     std::span<const BatchContest> contests,
                                     std::size_t max_batch) {
  if (contests.empty()) throw InvalidArgument("empty batch");
  if (contests.size() > max_batch) {
    throw InvalidArgument("batch larger than the maximum batch size");
  }
  const std::size_t n = grid.size();
  if (curves.ctr.size() != n || curves.payment.size() != n) {
    throw InvalidArgument("GSP curves do not match the grid");
  }
  if (learner_bid >= n) throw InvalidArgument("learner bid index outside the grid");
  for (const BatchContest& c : contests) {
    CheckUnit(c.click_threshold, "click threshold");
    CheckUnit(c.value, "value");
  }
  const double scale = 1.0 / static_cast<double>(max_batch);
  std::vector<double> counterfactual(n, 0.0);
  for (std::size_t b = 0; b < n; ++b) {
    for (const BatchContest& c : contests) {
      if (curves.ctr[b] > c.click_threshold) {
        counterfactual[b] += scale * (c.value - curves.payment[b]);
      }
    }
  }
  std::size_t clicks = 0;
  double value_sum = 0.0;
  for (const BatchContest& c : contests) {
    if (curves.ctr[learner_bid] > c.click_threshold) {
      ++clicks;
      value_sum += c.value;
    }
  }
  BatchFeedback batch;
  batch.contest_count = contests.size();
  const double clicked = static_cast<double>(clicks) /
                         static_cast<double>(contests.size());
  batch.frequencies = {clicked, 1.0 - clicked};
  batch.conditional_rewards = BidOutcomeTable(n, 2);
  if (clicks > 0) {
    const double vhat = value_sum / static_cast<double>(clicks);
    for (std::size_t b = 0; b < n; ++b) {
      batch.conditional_rewards(b, kWinOutcome) =
          ClampUtility(vhat - curves.payment[b]);
    }
  }
  return BatchRoundResult{AllocationCurve::Binary(curves.ctr),
                          PaymentCurve(curves.payment), std::move(batch),
                          counterfactual[learner_bid],
                          std::move(counterfactual)};
}

}  // namespace winexp
