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

#ifndef WINEXP_HINDSIGHT_H_
#define WINEXP_HINDSIGHT_H_

#include <cstddef>
#include <span>
#include <vector>

namespace winexp {

// Running per-bid utility sums against the realized trace, in O(|B|) memory.
class HindsightTracker {
 public:
  explicit HindsightTracker(std::size_t grid_size);

  // `counterfactual[b]` is the utility bid b would have earned this round;
  // `realized` is what the played bid earned.
  void Record(std::span<const double> counterfactual, double realized);

  std::size_t rounds() const { return rounds_; }
  std::span<const double> cumulative() const { return cumulative_; }
  double realized_total() const { return realized_total_; }
  double BestTotal() const;
  std::size_t BestBid() const;
  // BestTotal() - realized_total().
  double Regret() const;

 private:
  std::vector<double> cumulative_;
  double realized_total_ = 0.0;
  std::size_t rounds_ = 0;
};

// One second-price round seen from outside: highest other bid and value.
struct SingleItemRecord {
  double highest_other = 0.0;
  double value = 0.0;
};

// sum_t (v_t - B_t) 1{bid > B_t}.
double SecondPriceCumulativeUtility(std::span<const SingleItemRecord> trace,
                                    double bid);

// Best cumulative utility over every bid in [0, 1] (not only grid points).
double ContinuousSecondPriceOptimum(std::span<const SingleItemRecord> trace);

// Smallest gap between consecutive distinct points of {0, 1} plus the
// highest other bids; the piece width of second-price utilities.
double MinimumPieceWidth(std::span<const double> highest_others);

}  // namespace winexp

#endif  // WINEXP_HINDSIGHT_H_
