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

#ifndef WINEXP_DISTRIBUTION_SPEC_H_
#define WINEXP_DISTRIBUTION_SPEC_H_

#include <string>
#include <string_view>

#include "winexp/bid_distribution.h"

namespace winexp {

// Scalar sampling law on [0, 1] parsed from "uniform(lo,hi)",
// "normal(mean,sd)" or "constant(x)". Normal draws outside [0, 1] are
// rejected and redrawn.
class DistributionSpec {
 public:
  enum class Kind { kUniform, kNormal, kConstant };

  // Throws ConfigError on malformed text or parameters outside [0, 1].
  static DistributionSpec Parse(std::string_view text);
  static DistributionSpec Uniform(double lo, double hi);
  static DistributionSpec Normal(double mean, double sd);
  static DistributionSpec Constant(double value);

  Kind kind() const { return kind_; }
  double first() const { return first_; }
  double second() const { return second_; }

  double Sample(Rng& rng) const;
  std::string ToString() const;

 private:
  DistributionSpec(Kind kind, double first, double second);

  Kind kind_;
  double first_;
  double second_;
};

}  // namespace winexp

#endif  // WINEXP_DISTRIBUTION_SPEC_H_
