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

#ifndef WINEXP_BID_DISTRIBUTION_H_
#define WINEXP_BID_DISTRIBUTION_H_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "winexp/bid_grid.h"

namespace winexp {

using Rng = std::mt19937_64;

// Mixed strategy over grid positions.
//
// Weights are stored as logarithms and renormalized by max-subtraction after
// every update. The gap between the largest and any other log-weight is
// floored at kMaxLogGap so that every probability stays a positive normal
// double; all estimators divide by marginals built from these masses.
class BidDistribution {
 public:
  static constexpr double kMaxLogGap = 700.0;

  static BidDistribution Uniform(std::size_t size);
  static BidDistribution Uniform(const BidGrid& grid) {
    return Uniform(grid.size());
  }
  // Strictly positive masses; renormalized to sum to one.
  static BidDistribution FromMasses(std::span<const double> masses);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  std::span<const double> log_weights() const { return log_weights_; }

  // pi(b) <- pi(b) exp(eta * estimate(b)), renormalized. Throws
  // InvariantViolation when an estimate is positive and InvalidArgument when
  // eta <= 0 or sizes differ.
  void ApplyExpWeights(std::span<const double> estimate, double eta);

  // Inverse-CDF draw from one uniform variate of `rng`.
  std::size_t Sample(Rng& rng) const;

 private:
  explicit BidDistribution(std::vector<double> log_weights);
  void Renormalize();

  std::vector<double> log_weights_;
  std::vector<double> probs_;
};

// Functional form of BidDistribution::ApplyExpWeights.
BidDistribution ExpWeightsUpdate(const BidDistribution& dist,
                                 std::span<const double> estimate, double eta);

}  // namespace winexp

#endif  // WINEXP_BID_DISTRIBUTION_H_
