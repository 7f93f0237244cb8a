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

#include "winexp/bid_grid.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr double kSpacingTolerance = 1e-12;

}  // namespace

BidGrid BidGrid::Uniform(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw InvalidArgument("grid resolution must lie in (0, 1], got " +
                          std::to_string(resolution));
  }
  const auto steps =
      static_cast<std::size_t>(std::floor(1.0 / resolution + kSpacingTolerance));
  std::vector<double> points(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    points[i] = static_cast<double>(i) * resolution;
  }
  if (std::abs(points.back() - 1.0) <= kSpacingTolerance) points.back() = 1.0;
  if (points.back() > 1.0) points.back() = 1.0;
  if (points.size() < 2) {
    throw InvalidArgument("grid needs at least two points");
  }
  return BidGrid(std::move(points), resolution);
}

BidGrid BidGrid::FromPoints(std::vector<double> points) {
  if (points.size() < 2) {
    throw InvalidArgument("grid needs at least two points");
  }
  const double resolution = points[1] - points[0];
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] <= 1.0)) {
      throw InvalidArgument("grid point outside [0, 1]");
    }
    if (i > 0) {
      const double gap = points[i] - points[i - 1];
      if (!(gap > 0.0)) throw InvalidArgument("grid points must increase");
      if (std::abs(gap - resolution) > kSpacingTolerance) {
        throw InvalidArgument("grid points must be evenly spaced");
      }
    }
  }
  return BidGrid(std::move(points), resolution);
}

std::size_t BidGrid::NearestIndex(double bid) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), bid);
  if (it == points_.end()) return points_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - points_.begin());
  if (hi == 0) return 0;
  return (bid - points_[hi - 1] <= points_[hi] - bid) ? hi - 1 : hi;
}

}  // namespace winexp
