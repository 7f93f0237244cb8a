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

// Importance-weighted utility estimates for the exponential-weights learner.
//
// Every estimator targets the translated utility u_t(b) - 1 and returns a
// vector with one non-positive entry per grid bid. The outcome-aware
// estimators use the allocation curve x_t(., .) to spread one realized
// outcome over every bid that could have produced it:
//
//   u~(b) = (r(b, o_t) - 1) x(b, o_t) / Pr_t[o_t],
//   Pr_t[o] = sum_b pi(b) x(b, o),
//
// which makes the variance scale with |O| instead of |B|. The EXP3 baseline
// only reweights the submitted bid.

#ifndef WINEXP_ESTIMATORS_H_
#define WINEXP_ESTIMATORS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "winexp/bid_distribution.h"
#include "winexp/bid_grid.h"
#include "winexp/feedback_graph.h"
#include "winexp/outcome_model.h"

namespace winexp {

using UtilityEstimate = std::vector<double>;

// Two outcomes. On a win, `win_reward` holds r(.) for every grid bid; on a
// loss it is not read and may be empty.
//   won:  u~(b) = (r(b) - 1) x(b) / Pr[A]
//   lost: u~(b) = -(1 - x(b)) / Pr[not A]
// Throws InconsistentFeedback when the realized event has zero probability.
UtilityEstimate WinOnlyEstimate(const BidDistribution& dist,
                                std::span<const double> win_probability,
                                bool won, std::span<const double> win_reward);

// `reward_row` is r(., o_t).
UtilityEstimate OutcomeEstimate(const BidDistribution& dist,
                                const AllocationCurve& alloc,
                                std::size_t realized,
                                std::span<const double> reward_row);

// Second-price auction where the bidder loses ties: allocation 1{b > B_t},
// per-unit payment B_t. `value` is read only when `won`.
UtilityEstimate SecondPriceEstimate(const BidGrid& grid,
                                    const BidDistribution& dist,
                                    double highest_other, bool won,
                                    double value);

// u~(b) = sum_o x(b, o) / Pr_t[o] * f(o) * (Q(b, o) - 1).
UtilityEstimate BatchEstimate(const BidDistribution& dist,
                              const AllocationCurve& alloc,
                              const BatchFeedback& batch);

// BatchEstimate with f(o) replaced by its mean x(b_t, o); frequencies are not
// read. Unrealized outcomes contribute (Q - 1) = -1 under the Q = 0
// convention.
UtilityEstimate BatchEstimateMeanVariant(const BidDistribution& dist,
                                         const AllocationCurve& alloc,
                                         const BatchFeedback& batch,
                                         std::size_t submitted);

// (|I_t| / I_max) times the mean variant, for iterations with a variable
// number of contests. Throws InvalidArgument for max_batch == 0 or
// contest_count > max_batch.
UtilityEstimate ScaledBatchEstimate(const BidDistribution& dist,
                                    const AllocationCurve& alloc,
                                    const BatchFeedback& batch,
                                    std::size_t submitted,
                                    std::size_t max_batch);

// Feedback-graph estimate restricted to outcomes with marginal >= threshold:
//   u~(b) = 1{o_t in O_eps} sum_{o in N_out(o_t)} (r(b, o) - 1) x(b, o)
//                                              / sum_{o' in N_in(o)} Pr[o'].
// `rewards` must hold r(., o) for every out-neighbour of o_t; other columns
// are not read. Throws InvalidGraph when a self-loop is missing and
// InvalidArgument unless 0 < threshold < 1/2.
UtilityEstimate GraphEstimate(const BidDistribution& dist,
                              const AllocationCurve& alloc,
                              std::size_t realized, const RewardTable& rewards,
                              const FeedbackGraph& graph, double threshold);

// u~(b_t) = (u - 1) / pi(b_t), zero elsewhere.
UtilityEstimate Exp3Estimate(const BidDistribution& dist, std::size_t submitted,
                             double realized_utility);

// Closed-form E[u~(b)^2] over the learner's draw and the outcome, used by the
// exponential-weights regret audit. Reward tables are the full r(., .).
std::vector<double> WinOnlySecondMoment(const BidDistribution& dist,
                                        std::span<const double> win_probability,
                                        std::span<const double> win_reward);
std::vector<double> OutcomeSecondMoment(const BidDistribution& dist,
                                        const AllocationCurve& alloc,
                                        const RewardTable& rewards);
std::vector<double> GraphSecondMoment(const BidDistribution& dist,
                                      const AllocationCurve& alloc,
                                      const RewardTable& rewards,
                                      const FeedbackGraph& graph,
                                      double threshold);
// `expected_square_shortfall[b]` is E[(U - 1)^2 | b_t = b] for the realized
// utility U of bid b.
std::vector<double> Exp3SecondMoment(
    const BidDistribution& dist,
    std::span<const double> expected_square_shortfall);

}  // namespace winexp

#endif  // WINEXP_ESTIMATORS_H_
