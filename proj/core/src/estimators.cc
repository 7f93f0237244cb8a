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

#include "winexp/estimators.h"

#include <string>

#include "winexp/errors.h"

namespace winexp {
namespace {

void CheckSize(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InvalidArgument(std::string(what) + ": expected " +
                          std::to_string(want) + " entries, got " +
                          std::to_string(got));
  }
}

void CheckReward(double r) {
  if (!(r >= -1.0 && r <= 1.0)) throw InvalidArgument("reward outside [-1, 1]");
}

double RequirePositive(double marginal, const char* event) {
  if (!(marginal > 0.0)) {
    throw InconsistentFeedback(std::string(event) +
                               " has zero probability under the learner");
  }
  return marginal;
}

// Outcome marginals plus the O_eps membership mask for the graph estimator.
struct ThresholdedMarginals {
  std::vector<double> marginal;
  std::vector<bool> kept;
  // sum_{o' in N_in(o), o' kept} Pr[o'] for every kept o.
  std::vector<double> in_mass;
};

ThresholdedMarginals Threshold(const BidDistribution& dist,
                               const AllocationCurve& alloc,
                               const FeedbackGraph& graph, double threshold) {
  ThresholdedMarginals result;
  result.marginal = alloc.Marginals(dist);
  const std::size_t n = alloc.num_outcomes();
  result.kept.resize(n);
  for (std::size_t o = 0; o < n; ++o) {
    result.kept[o] = result.marginal[o] >= threshold;
  }
  result.in_mass.assign(n, 0.0);
  for (std::size_t o = 0; o < n; ++o) {
    if (!result.kept[o]) continue;
    for (std::size_t src : graph.InNeighbors(o)) {
      if (result.kept[src]) result.in_mass[o] += result.marginal[src];
    }
  }
  return result;
}

void CheckGraphInputs(const AllocationCurve& alloc, const FeedbackGraph& graph,
                      double threshold) {
  if (graph.size() != alloc.num_outcomes()) {
    throw InvalidArgument("feedback graph must have one node per outcome");
  }
  if (!graph.HasAllSelfLoops()) {
    throw InvalidGraph("feedback graph is missing a self-loop");
  }
  if (!(threshold > 0.0 && threshold < 0.5)) {
    throw InvalidArgument("graph threshold must lie in (0, 1/2)");
  }
}

}  // namespace

UtilityEstimate WinOnlyEstimate(const BidDistribution& dist,
                                std::span<const double> win_probability,
                                bool won, std::span<const double> win_reward) {
  const std::size_t n = dist.size();
  CheckSize(win_probability.size(), n, "win probabilities");
  double p_win = 0.0;
  for (std::size_t b = 0; b < n; ++b) p_win += dist[b] * win_probability[b];
  UtilityEstimate estimate(n);
  if (won) {
    CheckSize(win_reward.size(), n, "win rewards");
    RequirePositive(p_win, "a win");
    for (std::size_t b = 0; b < n; ++b) {
      CheckReward(win_reward[b]);
      estimate[b] = (win_reward[b] - 1.0) * win_probability[b] / p_win;
    }
  } else {
    const double p_lose = RequirePositive(1.0 - p_win, "a loss");
    for (std::size_t b = 0; b < n; ++b) {
      estimate[b] = -(1.0 - win_probability[b]) / p_lose;
    }
  }
  return estimate;
}

UtilityEstimate OutcomeEstimate(const BidDistribution& dist,
                                const AllocationCurve& alloc,
                                std::size_t realized,
                                std::span<const double> reward_row) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  CheckSize(reward_row.size(), n, "reward row");
  if (realized >= alloc.num_outcomes()) {
    throw InvalidArgument("realized outcome out of range");
  }
  const double marginal =
      RequirePositive(alloc.Marginal(dist, realized), "the realized outcome");
  UtilityEstimate estimate(n);
  for (std::size_t b = 0; b < n; ++b) {
    CheckReward(reward_row[b]);
    estimate[b] = (reward_row[b] - 1.0) * alloc(b, realized) / marginal;
  }
  return estimate;
}

UtilityEstimate SecondPriceEstimate(const BidGrid& grid,
                                    const BidDistribution& dist,
                                    double highest_other, bool won,
                                    double value) {
  const std::size_t n = grid.size();
  CheckSize(dist.size(), n, "distribution");
  double winning_mass = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    if (grid[b] > highest_other) winning_mass += dist[b];
  }
  UtilityEstimate estimate(n, 0.0);
  if (won) {
    RequirePositive(winning_mass, "a win");
    const double reward = value - highest_other;
    CheckReward(reward);
    for (std::size_t b = 0; b < n; ++b) {
      if (grid[b] > highest_other) estimate[b] = (reward - 1.0) / winning_mass;
    }
  } else {
    const double losing_mass = RequirePositive(1.0 - winning_mass, "a loss");
    for (std::size_t b = 0; b < n; ++b) {
      if (grid[b] <= highest_other) estimate[b] = -1.0 / losing_mass;
    }
  }
  return estimate;
}

UtilityEstimate BatchEstimate(const BidDistribution& dist,
                              const AllocationCurve& alloc,
                              const BatchFeedback& batch) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  CheckSize(batch.conditional_rewards.num_bids(), n, "batch rewards");
  CheckSize(batch.frequencies.size(), alloc.num_outcomes(), "frequencies");
  batch.Validate();
  UtilityEstimate estimate(n, 0.0);
  for (std::size_t o = 0; o < alloc.num_outcomes(); ++o) {
    const double f = batch.frequencies[o];
    if (f == 0.0) continue;
    const double marginal =
        RequirePositive(alloc.Marginal(dist, o), "a realized batch outcome");
    for (std::size_t b = 0; b < n; ++b) {
      estimate[b] += alloc(b, o) / marginal * f *
                     (batch.conditional_rewards(b, o) - 1.0);
    }
  }
  return estimate;
}

UtilityEstimate BatchEstimateMeanVariant(const BidDistribution& dist,
                                         const AllocationCurve& alloc,
                                         const BatchFeedback& batch,
                                         std::size_t submitted) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  CheckSize(batch.conditional_rewards.num_bids(), n, "batch rewards");
  CheckSize(batch.conditional_rewards.num_outcomes(), alloc.num_outcomes(),
            "batch rewards");
  if (submitted >= n) throw InvalidArgument("submitted bid out of range");
  UtilityEstimate estimate(n, 0.0);
  for (std::size_t o = 0; o < alloc.num_outcomes(); ++o) {
    const double expected_share = alloc(submitted, o);
    if (expected_share == 0.0) continue;
    // x(b_t, o) > 0 and pi(b_t) > 0 imply Pr_t[o] > 0.
    const double marginal = alloc.Marginal(dist, o);
    for (std::size_t b = 0; b < n; ++b) {
      const double q = batch.conditional_rewards(b, o);
      CheckReward(q);
      estimate[b] += alloc(b, o) * expected_share / marginal * (q - 1.0);
    }
  }
  return estimate;
}

UtilityEstimate ScaledBatchEstimate(const BidDistribution& dist,
                                    const AllocationCurve& alloc,
                                    const BatchFeedback& batch,
                                    std::size_t submitted,
                                    std::size_t max_batch) {
  if (max_batch == 0) throw InvalidArgument("maximum batch size must be >= 1");
  if (batch.contest_count > max_batch) {
    throw InvalidArgument("batch larger than the declared maximum");
  }
  if (batch.contest_count == 0) return UtilityEstimate(dist.size(), 0.0);
  UtilityEstimate estimate =
      BatchEstimateMeanVariant(dist, alloc, batch, submitted);
  const double scale = static_cast<double>(batch.contest_count) /
                       static_cast<double>(max_batch);
  for (double& e : estimate) e *= scale;
  return estimate;
}

UtilityEstimate GraphEstimate(const BidDistribution& dist,
                              const AllocationCurve& alloc,
                              std::size_t realized, const RewardTable& rewards,
                              const FeedbackGraph& graph, double threshold) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  CheckGraphInputs(alloc, graph, threshold);
  if (realized >= alloc.num_outcomes()) {
    throw InvalidArgument("realized outcome out of range");
  }
  UtilityEstimate estimate(n, 0.0);
  const ThresholdedMarginals m = Threshold(dist, alloc, graph, threshold);
  if (!m.kept[realized]) return estimate;
  CheckSize(rewards.num_bids(), n, "reward table");
  for (std::size_t o : graph.OutNeighbors(realized)) {
    if (!m.kept[o]) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const double r = rewards(b, o);
      CheckReward(r);
      estimate[b] += (r - 1.0) * alloc(b, o) / m.in_mass[o];
    }
  }
  return estimate;
}

UtilityEstimate Exp3Estimate(const BidDistribution& dist, std::size_t submitted,
                             double realized_utility) {
  if (submitted >= dist.size()) throw InvalidArgument("submitted bid out of range");
  CheckReward(realized_utility);
  UtilityEstimate estimate(dist.size(), 0.0);
  estimate[submitted] = (realized_utility - 1.0) / dist[submitted];
  return estimate;
}

std::vector<double> WinOnlySecondMoment(const BidDistribution& dist,
                                        std::span<const double> win_probability,
                                        std::span<const double> win_reward) {
  const std::size_t n = dist.size();
  CheckSize(win_probability.size(), n, "win probabilities");
  CheckSize(win_reward.size(), n, "win rewards");
  double p_win = 0.0;
  for (std::size_t b = 0; b < n; ++b) p_win += dist[b] * win_probability[b];
  const double p_lose = 1.0 - p_win;
  std::vector<double> moment(n, 0.0);
  for (std::size_t b = 0; b < n; ++b) {
    const double x = win_probability[b];
    if (p_win > 0.0) {
      const double d = (win_reward[b] - 1.0) * x;
      moment[b] += d * d / p_win;
    }
    if (p_lose > 0.0) moment[b] += (1.0 - x) * (1.0 - x) / p_lose;
  }
  return moment;
}

std::vector<double> OutcomeSecondMoment(const BidDistribution& dist,
                                        const AllocationCurve& alloc,
                                        const RewardTable& rewards) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  const std::vector<double> marginal = alloc.Marginals(dist);
  std::vector<double> moment(n, 0.0);
  for (std::size_t o = 0; o < alloc.num_outcomes(); ++o) {
    if (!(marginal[o] > 0.0)) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const double d = (rewards(b, o) - 1.0) * alloc(b, o);
      moment[b] += d * d / marginal[o];
    }
  }
  return moment;
}

std::vector<double> GraphSecondMoment(const BidDistribution& dist,
                                      const AllocationCurve& alloc,
                                      const RewardTable& rewards,
                                      const FeedbackGraph& graph,
                                      double threshold) {
  const std::size_t n = dist.size();
  CheckSize(alloc.num_bids(), n, "allocation curve");
  CheckGraphInputs(alloc, graph, threshold);
  const ThresholdedMarginals m = Threshold(dist, alloc, graph, threshold);
  std::vector<double> moment(n, 0.0);
  for (std::size_t realized = 0; realized < alloc.num_outcomes(); ++realized) {
    if (!m.kept[realized]) continue;
    const auto out = graph.OutNeighbors(realized);
    for (std::size_t b = 0; b < n; ++b) {
      double value = 0.0;
      for (std::size_t o : out) {
        if (m.kept[o]) value += (rewards(b, o) - 1.0) * alloc(b, o) / m.in_mass[o];
      }
      moment[b] += m.marginal[realized] * value * value;
    }
  }
  return moment;
}

std::vector<double> Exp3SecondMoment(
    const BidDistribution& dist,
    std::span<const double> expected_square_shortfall) {
  CheckSize(expected_square_shortfall.size(), dist.size(), "shortfalls");
  std::vector<double> moment(dist.size());
  for (std::size_t b = 0; b < dist.size(); ++b) {
    moment[b] = expected_square_shortfall[b] / dist[b];
  }
  return moment;
}

}  // namespace winexp
