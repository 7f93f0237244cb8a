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

#include "winexp/hindsight.h"

#include <algorithm>

#include "winexp/errors.h"

namespace winexp {

HindsightTracker::HindsightTracker(std::size_t grid_size)
    : cumulative_(grid_size, 0.0) {
  if (grid_size == 0) throw InvalidArgument("hindsight over an empty grid");
}

void HindsightTracker::Record(std::span<const double> counterfactual,
                              double realized) {
  if (counterfactual.size() != cumulative_.size()) {
    throw InvalidArgument("counterfactual utilities do not match the grid");
  }
  for (std::size_t b = 0; b < cumulative_.size(); ++b) {
    cumulative_[b] += counterfactual[b];
  }
  realized_total_ += realized;
  ++rounds_;
}

double HindsightTracker::BestTotal() const {
  return *std::max_element(cumulative_.begin(), cumulative_.end());
}

std::size_t HindsightTracker::BestBid() const {
  return static_cast<std::size_t>(
      std::max_element(cumulative_.begin(), cumulative_.end()) -
      cumulative_.begin());
}

double HindsightTracker::Regret() const { return BestTotal() - realized_total_; }

double SecondPriceCumulativeUtility(std::span<const SingleItemRecord> trace,
                                    double bid) {
  double total = 0.0;
  for (const SingleItemRecord& r : trace) {
    if (bid > r.highest_other) total += r.value - r.highest_other;
  }
  return total;
}

double ContinuousSecondPriceOptimum(std::span<const SingleItemRecord> trace) {
  std::vector<SingleItemRecord> sorted(trace.begin(), trace.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SingleItemRecord& a, const SingleItemRecord& b) {
              return a.highest_other < b.highest_other;
            });
  double best = 0.0;
  double prefix = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    prefix += sorted[i].value - sorted[i].highest_other;
    const bool last_of_value = i + 1 == sorted.size() ||
                               sorted[i + 1].highest_other > sorted[i].highest_other;
    if (last_of_value && sorted[i].highest_other < 1.0) {
      best = std::max(best, prefix);
    }
  }
  return best;
}

double MinimumPieceWidth(std::span<const double> highest_others) {
  std::vector<double> points(highest_others.begin(), highest_others.end());
  points.push_back(0.0);
  points.push_back(1.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double gap = 1.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    gap = std::min(gap, points[i] - points[i - 1]);
  }
  return gap;
}

}  // namespace winexp
