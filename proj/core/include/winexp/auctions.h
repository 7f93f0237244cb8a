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

#ifndef WINEXP_AUCTIONS_H_
#define WINEXP_AUCTIONS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "winexp/bid_grid.h"
#include "winexp/outcome_model.h"

namespace winexp {

// Environment kind tags: "second-price", "first-price", "all-pay",
// "unit-demand", "gsp", "gsp-batch".
enum class EnvironmentKind {
  kSecondPrice,
  kFirstPrice,
  kAllPay,
  kUnitDemand,
  kGsp,
  kGspBatch,
};
std::string_view ToString(EnvironmentKind kind);
// Throws ConfigError on unknown tags.
EnvironmentKind ParseEnvironmentKind(std::string_view tag);

// Everything one auction round reveals or could reveal. The realized outcome
// at any grid bid b is the first o with x(b, 0) + ... + x(b, o) > coupling;
// the same coupling variate drives every counterfactual bid.
struct RoundFeedback {
  AllocationCurve alloc;
  BidOutcomeTable payments;  // per-unit payment p(b, o)
  RewardTable rewards;       // r(b, o), the full truth
  double coupling = 0.0;
  std::size_t submitted = 0;
  std::size_t realized_outcome = 0;
  std::optional<double> value_revealed;
  double realized_utility = 0.0;

  std::size_t OutcomeAt(std::size_t bid) const;
  double UtilityAt(std::size_t bid) const;
  // UtilityAt for every grid bid.
  std::vector<double> Counterfactual() const;
};

// First o whose cumulative probability in `row` exceeds u; the last outcome
// when rounding leaves the cumulative sum at or below u.
std::size_t RealizeOutcome(std::span<const double> row, double u);

double ClampUtility(double u);

// Single item against the highest other bid; the learner loses ties.
//   second price: winner pays the highest other bid
//   first price:  winner pays her bid
//   all-pay:      everybody pays her bid
// `learner_bid` is a grid index; bids and `value` lie in [0, 1].
RoundFeedback SecondPriceRound(const BidGrid& grid, std::size_t learner_bid,
                               std::span<const double> other_bids,
                               double value);
RoundFeedback FirstPriceRound(const BidGrid& grid, std::size_t learner_bid,
                              std::span<const double> other_bids,
                              double value);
RoundFeedback AllPayRound(const BidGrid& grid, std::size_t learner_bid,
                          std::span<const double> other_bids, double value);

// Unit demand over K items: outcomes 0..K-1 allocate an item, outcome K
// allocates nothing. `allocation` is |B| x (K + 1), `item_payments` is
// |B| x K, `values` has K entries. Throws InvalidArgument when rows of
// `allocation` do not sum to one.
RoundFeedback UnitDemandRound(const BidGrid& grid, std::size_t learner_bid,
                              const BidOutcomeTable& allocation,
                              const BidOutcomeTable& item_payments,
                              std::span<const double> values, double coupling);

// Linear unit-demand rule: x(b, k) = weight_k * b and p(b, k) = price_k * b
// with the weights summing to at most one.
struct UnitDemandRule {
  BidOutcomeTable allocation;
  BidOutcomeTable item_payments;
};
UnitDemandRule LinearUnitDemandRule(const BidGrid& grid,
                                    std::span<const double> item_weights,
                                    std::span<const double> item_prices);

struct GspBidder {
  double bid = 0.0;
  double score = 0.0;
};

// One weighted GSP auction from the learner's seat.
struct GspRound {
  double learner_score = 1.0;
  std::vector<GspBidder> others;
  double reserve = 0.0;
  std::vector<double> slot_ctrs;  // weakly descending
  double click_threshold = 1.0;

  // Throws InvalidArgument on scores, bids, CTRs or threshold outside
  // [0, 1], a negative reserve, or CTRs out of order.
  void Validate() const;
};

// Learner-seat curves over the grid. slot[b] is 1-based, 0 when unslotted.
struct GspCurves {
  std::vector<double> ctr;
  std::vector<double> payment;
  std::vector<std::size_t> slot;
};

// Rank-score s * b. Entrants below the reserve are discarded. The learner's
// slot is one plus the number of surviving others with rank-score at least
// hers. She pays the highest surviving rank-score strictly below hers, or the
// reserve when there is none, divided by her score.
GspCurves ComputeGspCurves(const BidGrid& grid, const GspRound& round);

// Click iff ctr(b_t) > click_threshold; value revealed iff clicked.
RoundFeedback GspRoundFeedback(const BidGrid& grid, std::size_t learner_bid,
                               const GspRound& round, double value);
RoundFeedback GspRoundFeedback(const BidGrid& grid, std::size_t learner_bid,
                               const GspCurves& curves, double click_threshold,
                               double value);

struct BatchContest {
  double click_threshold = 1.0;
  double value = 0.0;
};

struct BatchRoundResult {
  AllocationCurve alloc;
  PaymentCurve payment;
  BatchFeedback batch;
  // (1 / max_batch) * sum over contests of the contest utility at b.
  double realized_utility = 0.0;
  std::vector<double> counterfactual;
};

// Contests sharing one pair of curves. f(click) is the clicked fraction and
// Q(b, click) = vhat - p(b) with vhat the mean value over clicked contests.
// Throws InvalidArgument on an empty batch or contests.size() > max_batch.
BatchRoundResult BatchSponsoredRound(const BidGrid& grid,
                                     std::size_t learner_bid,
                                     const GspCurves& curves,
                                     std::span<const BatchContest> contests,
                                     std::size_t max_batch);

}  // namespace winexp

#endif  // WINEXP_AUCTIONS_H_
