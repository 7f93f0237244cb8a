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

#ifndef WINEXP_BID_GRID_H_
#define WINEXP_BID_GRID_H_

#include <cstddef>
#include <span>
#include <vector>

namespace winexp {

// A finite, equally spaced set of bids inside [0, 1]. This is the learner's
// action set; every per-bid table in the library is indexed by grid position.
class BidGrid {
 public:
  // {0, eps, 2 eps, ...} intersected with [0, 1]. The last point is snapped to
  // exactly 1 when eps divides 1 within 1e-12.
  static BidGrid Uniform(double resolution);

  // Arbitrary equally spaced points; throws InvalidArgument unless they are
  // strictly increasing, inside [0, 1], at least two, and evenly spaced.
  static BidGrid FromPoints(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  double resolution() const { return resolution_; }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const { return points_; }

  // Index of the grid point closest to `bid` (ties go to the lower point).
  std::size_t NearestIndex(double bid) const;

 private:
  BidGrid(std::vector<double> points, double resolution)
      : points_(std::move(points)), resolution_(resolution) {}

  std::vector<double> points_;
  double resolution_;
};

}  // namespace winexp

#endif  // WINEXP_BID_GRID_H_
