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

#include "winexp/bid_distribution.h"

#include <algorithm>
#include <cmath>

#include "winexp/errors.h"

namespace winexp {

BidDistribution::BidDistribution(std::vector<double> log_weights)
    : log_weights_(std::move(log_weights)), probs_(log_weights_.size()) {
  Renormalize();
}

BidDistribution BidDistribution::Uniform(std::size_t size) {
  if (size == 0) throw InvalidArgument("distribution over an empty grid");
  return BidDistribution(std::vector<double>(size, 0.0));
}

BidDistribution BidDistribution::FromMasses(std::span<const double> masses) {
  if (masses.empty()) throw InvalidArgument("distribution over an empty grid");
  std::vector<double> logs(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) {
      throw InvalidArgument("masses must be finite and strictly positive");
    }
    logs[i] = std::log(masses[i]);
  }
  return BidDistribution(std::move(logs));
}

void BidDistribution::Renormalize() {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights_.size(); ++i) {
    log_weights_[i] = std::max(log_weights_[i] - top, -kMaxLogGap);
    probs_[i] = std::exp(log_weights_[i]);
    total += probs_[i];
  }
  const double log_total = std::log(total);
  for (std::size_t i = 0; i < log_weights_.size(); ++i) {
    probs_[i] /= total;
    log_weights_[i] -= log_total;
  }
}

void BidDistribution::ApplyExpWeights(std::span<const double> estimate,
                                      double eta) {
  if (estimate.size() != size()) {
    throw InvalidArgument("estimate size does not match the distribution");
  }
  if (!(eta > 0.0)) throw InvalidArgument("step size must be positive");
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    if (!(estimate[i] <= 0.0)) {
      throw InvariantViolation("utility estimates must be non-positive");
    }
  }
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    log_weights_[i] += eta * estimate[i];
  }
  Renormalize();
}

std::size_t BidDistribution::Sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  for (std::size_t i = 0; i + 1 < probs_.size(); ++i) {
    if (u < probs_[i]) return i;
    u -= probs_[i];
  }
  return probs_.size() - 1;
}

BidDistribution ExpWeightsUpdate(const BidDistribution& dist,
                                 std::span<const double> estimate,
                                 double eta) {
  BidDistribution next = dist;
  next.ApplyExpWeights(estimate, eta);
  return next;
}

}  // namespace winexp
