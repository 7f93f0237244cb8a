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

#ifndef WINEXP_DISCRETIZATION_H_
#define WINEXP_DISCRETIZATION_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "winexp/bid_grid.h"

namespace winexp {

// Average utility is L-Lipschitz on pieces of width at least piece_width.
// The bid space is one-dimensional.
struct DiscretizationConfig {
  double lipschitz = 0.0;
  double piece_width = 1.0;
  std::size_t horizon = 1;

  void Validate() const;
};

// min{1 / (L T), piece_width}; piece_width when L = 0.
double ChooseEpsilon(const DiscretizationConfig& cfg);

BidGrid MakeGrid(double epsilon);

// eps L T. Throws PreconditionViolated unless eps < piece_width.
double DiscretizationErrorBound(double epsilon, const DiscretizationConfig& cfg);

// 2 n L / r for weighted GSP with L-Lipschitz score CDFs and reserve r > 0.
double GspLipschitzConstant(std::size_t bidders, double cdf_lipschitz,
                            double reserve);

enum class BoundKind {
  kWinOnly,     // 4 sqrt(T ln|B|)
  kOutcome,     // 2 sqrt(2 T |O| ln|B|)
  kContinuous,  // 2 sqrt(2 T |O| ln max{1/piece, L T}) + 1
  kGraph,       // 2 sqrt(8 a T ln|B| ln(16 |O|^2 T / a)) + 1
  kDoubling,    // 25 sqrt(2 T |O| ln max{L T, 1/piece}) + 1
};

// Throws ConfigError on unknown tags: "win-only", "outcome", "continuous",
// "graph", "doubling".
BoundKind ParseBoundKind(std::string_view tag);

struct BoundInputs {
  std::size_t horizon = 1;
  std::size_t grid_size = 2;
  std::size_t num_outcomes = 2;
  double lipschitz = 0.0;
  double piece_width = 1.0;
  std::optional<std::size_t> independence_number;
};

double RegretBound(BoundKind kind, const BoundInputs& in);

}  // namespace winexp

#endif  // WINEXP_DISCRETIZATION_H_
