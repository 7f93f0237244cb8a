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

#include "winexp/outcome_model.h"

#include <cmath>
#include <set>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr double kRowSumTolerance = 1e-9;

}  // namespace

OutcomeSet::OutcomeSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw InvalidArgument("need at least two outcomes");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw InvalidArgument("outcome labels must be distinct");
  }
}

OutcomeSet OutcomeSet::Indexed(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) labels.push_back("o" + std::to_string(i));
  return OutcomeSet(std::move(labels));
}

std::size_t OutcomeSet::IndexOf(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw InvalidArgument("unknown outcome label '" + label + "'");
}

std::vector<double> BidOutcomeTable::Column(std::size_t outcome) const {
  std::vector<double> column(num_bids_);
  for (std::size_t b = 0; b < num_bids_; ++b) column[b] = (*this)(b, outcome);
  return column;
}

AllocationCurve::AllocationCurve(BidOutcomeTable table)
    : table_(std::move(table)) {
  if (table_.num_bids() == 0 || table_.num_outcomes() < 2) {
    throw InvalidArgument("allocation curve needs bids and >= 2 outcomes");
  }
  for (std::size_t b = 0; b < table_.num_bids(); ++b) {
    double total = 0.0;
    for (double p : table_.Row(b)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("allocation probability outside [0, 1]");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kRowSumTolerance) {
      throw InvalidArgument("allocation row does not sum to one");
    }
  }
}

AllocationCurve AllocationCurve::Binary(std::span<const double> win_probability) {
  BidOutcomeTable table(win_probability.size(), 2);
  for (std::size_t b = 0; b < win_probability.size(); ++b) {
    table(b, kWinOutcome) = win_probability[b];
    table(b, kLoseOutcome) = 1.0 - win_probability[b];
  }
  return AllocationCurve(std::move(table));
}

double AllocationCurve::Marginal(const BidDistribution& dist,
                                 std::size_t outcome) const {
  if (dist.size() != num_bids()) {
    throw InvalidArgument("distribution and allocation curve sizes differ");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < num_bids(); ++b) total += dist[b] * table_(b, outcome);
  return total;
}

std::vector<double> AllocationCurve::Marginals(const BidDistribution& dist) const {
  std::vector<double> marginals(num_outcomes());
  for (std::size_t o = 0; o < num_outcomes(); ++o) marginals[o] = Marginal(dist, o);
  return marginals;
}

RewardTable::RewardTable(BidOutcomeTable table) : table_(std::move(table)) {
  for (std::size_t b = 0; b < table_.num_bids(); ++b) {
    for (double r : table_.Row(b)) {
      if (!(r >= -1.0 && r <= 1.0)) {
        throw InvalidArgument("reward outside [-1, 1]");
      }
    }
  }
}

RewardTable RewardTable::Binary(std::span<const double> win_reward) {
  BidOutcomeTable table(win_reward.size(), 2);
  for (std::size_t b = 0; b < win_reward.size(); ++b) {
    table(b, kWinOutcome) = win_reward[b];
  }
  return RewardTable(std::move(table));
}

PaymentCurve::PaymentCurve(std::vector<double> per_unit)
    : per_unit_(std::move(per_unit)) {
  for (double p : per_unit_) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("payment outside [0, 1]");
  }
}

void BatchFeedback::Validate() const {
  if (frequencies.size() != conditional_rewards.num_outcomes()) {
    throw InvalidArgument("batch frequencies and rewards disagree on |O|");
  }
  double total = 0.0;
  for (double f : frequencies) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("frequency outside [0, 1]");
    total += f;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance) {
    throw InvalidArgument("batch frequencies must sum to one");
  }
  for (std::size_t b = 0; b < conditional_rewards.num_bids(); ++b) {
    for (std::size_t o = 0; o < frequencies.size(); ++o) {
      const double q = conditional_rewards(b, o);
      if (!(q >= -1.0 && q <= 1.0)) {
        throw InvalidArgument("conditional reward outside [-1, 1]");
      }
      if (frequencies[o] == 0.0 && q != 0.0) {
        throw InvalidArgument("conditional reward on an unrealized outcome");
      }
    }
  }
}

}  // namespace winexp
