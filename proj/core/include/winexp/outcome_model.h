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

#ifndef WINEXP_OUTCOME_MODEL_H_
#define WINEXP_OUTCOME_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "winexp/bid_distribution.h"

namespace winexp {

// Outcome index conventions for two-outcome (win-only) settings.
inline constexpr std::size_t kWinOutcome = 0;
inline constexpr std::size_t kLoseOutcome = 1;

class OutcomeSet {
 public:
  explicit OutcomeSet(std::vector<std::string> labels);
  static OutcomeSet Binary() { return OutcomeSet({"win", "lose"}); }
  // Labels "o0", "o1", ...
  static OutcomeSet Indexed(std::size_t count);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Throws InvalidArgument for unknown labels.
  std::size_t IndexOf(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

// Row-major bids x outcomes table of doubles.
class BidOutcomeTable {
 public:
  BidOutcomeTable() = default;
  BidOutcomeTable(std::size_t num_bids, std::size_t num_outcomes,
                  double fill = 0.0)
      : num_bids_(num_bids),
        num_outcomes_(num_outcomes),
        data_(num_bids * num_outcomes, fill) {}

  std::size_t num_bids() const { return num_bids_; }
  std::size_t num_outcomes() const { return num_outcomes_; }

  double operator()(std::size_t bid, std::size_t outcome) const {
    return data_[bid * num_outcomes_ + outcome];
  }
  double& operator()(std::size_t bid, std::size_t outcome) {
    return data_[bid * num_outcomes_ + outcome];
  }
  std::span<const double> Row(std::size_t bid) const {
    return {data_.data() + bid * num_outcomes_, num_outcomes_};
  }
  // Copies one outcome column (a function of the bid).
  std::vector<double> Column(std::size_t outcome) const;

 private:
  std::size_t num_bids_ = 0;
  std::size_t num_outcomes_ = 0;
  std::vector<double> data_;
};

// x_t(b, o): for every grid bid a probability vector over outcomes.
class AllocationCurve {
 public:
  // Validates entries in [0, 1] and rows summing to one within 1e-9.
  explicit AllocationCurve(BidOutcomeTable table);
  // Two outcomes: win probability per bid, losing complement implied.
  static AllocationCurve Binary(std::span<const double> win_probability);

  std::size_t num_bids() const { return table_.num_bids(); }
  std::size_t num_outcomes() const { return table_.num_outcomes(); }
  double operator()(std::size_t bid, std::size_t outcome) const {
    return table_(bid, outcome);
  }
  const BidOutcomeTable& table() const { return table_; }

  // Pr_t[o] = sum_b pi(b) x(b, o).
  double Marginal(const BidDistribution& dist, std::size_t outcome) const;
  std::vector<double> Marginals(const BidDistribution& dist) const;

 private:
  BidOutcomeTable table_;
};

// r_t(b, o) in [-1, 1].
class RewardTable {
 public:
  explicit RewardTable(BidOutcomeTable table);
  // Win-only reward function: r(b, win) = reward[b], r(b, lose) = 0.
  static RewardTable Binary(std::span<const double> win_reward);

  std::size_t num_bids() const { return table_.num_bids(); }
  std::size_t num_outcomes() const { return table_.num_outcomes(); }
  double operator()(std::size_t bid, std::size_t outcome) const {
    return table_(bid, outcome);
  }
  const BidOutcomeTable& table() const { return table_; }
  // r(., o) as a function of the bid.
  std::vector<double> ForOutcome(std::size_t outcome) const {
    return table_.Column(outcome);
  }

 private:
  BidOutcomeTable table_;
};

// Per-unit (per-click) payment for every grid bid, entries in [0, 1].
class PaymentCurve {
 public:
  explicit PaymentCurve(std::vector<double> per_unit);
  std::size_t size() const { return per_unit_.size(); }
  double operator[](std::size_t bid) const { return per_unit_[bid]; }
  std::span<const double> values() const { return per_unit_; }

 private:
  std::vector<double> per_unit_;
};

// Batch-reward feedback for one iteration: realized outcome frequencies f(o)
// over `contest_count` reward contests and conditional average rewards
// Q(b, o), with Q(., o) = 0 for outcomes that were never realized.
struct BatchFeedback {
  std::vector<double> frequencies;
  BidOutcomeTable conditional_rewards;
  std::size_t contest_count = 0;

  // Throws InvalidArgument unless frequencies sum to one, Q entries lie in
  // [-1, 1], and Q vanishes on unrealized outcomes.
  void Validate() const;
};

}  // namespace winexp

#endif  // WINEXP_OUTCOME_MODEL_H_
