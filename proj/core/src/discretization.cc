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

#include "winexp/discretization.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "winexp/errors.h"

namespace winexp {

void DiscretizationConfig::Validate() const {
  if (!(lipschitz >= 0.0)) throw InvalidArgument("Lipschitz constant must be >= 0");
  if (!(piece_width > 0.0)) throw InvalidArgument("piece width must be > 0");
  if (horizon == 0) throw InvalidArgument("horizon must be >= 1");
}

double ChooseEpsilon(const DiscretizationConfig& cfg) {
  cfg.Validate();
  if (cfg.lipschitz == 0.0) return cfg.piece_width;
  return std::min(1.0 / (cfg.lipschitz * static_cast<double>(cfg.horizon)),
                  cfg.piece_width);
}

BidGrid MakeGrid(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  return BidGrid::Uniform(std::min(epsilon, 1.0));
}

double DiscretizationErrorBound(double epsilon, const DiscretizationConfig& cfg) {
  cfg.Validate();
  if (!(epsilon < cfg.piece_width)) {
    throw PreconditionViolated(
        "discretization bound requires epsilon below the piece width");
  }
  return epsilon * cfg.lipschitz * static_cast<double>(cfg.horizon);
}

double GspLipschitzConstant(std::size_t bidders, double cdf_lipschitz,
                            double reserve) {
  if (!(reserve > 0.0)) {
    throw InvalidArgument("GSP Lipschitz constant needs a positive reserve");
  }
  if (!(cdf_lipschitz >= 0.0)) throw InvalidArgument("CDF Lipschitz must be >= 0");
  return 2.0 * static_cast<double>(bidders) * cdf_lipschitz / reserve;
}

BoundKind ParseBoundKind(std::string_view tag) {
  if (tag == "win-only") return BoundKind::kWinOnly;
  if (tag == "outcome") return BoundKind::kOutcome;
  if (tag == "continuous") return BoundKind::kContinuous;
  if (tag == "graph") return BoundKind::kGraph;
  if (tag == "doubling") return BoundKind::kDoubling;
  throw ConfigError("unknown regret bound kind '" + std::string(tag) + "'");
}

double RegretBound(BoundKind kind, const BoundInputs& in) {
  if (in.horizon == 0) throw InvalidArgument("horizon must be >= 1");
  const double t = static_cast<double>(in.horizon);
  const double outcomes = static_cast<double>(in.num_outcomes);
  const double log_b = std::log(static_cast<double>(in.grid_size));
  auto log_scale = [&] {
    if (!(in.piece_width > 0.0)) throw InvalidArgument("piece width must be > 0");
    return std::log(std::max(1.0 / in.piece_width, in.lipschitz * t));
  };
  switch (kind) {
    case BoundKind::kWinOnly:
      return 4.0 * std::sqrt(t * log_b);
    case BoundKind::kOutcome:
      return 2.0 * std::sqrt(2.0 * t * outcomes * log_b);
    case BoundKind::kContinuous:
      return 2.0 * std::sqrt(2.0 * t * outcomes * log_scale()) + 1.0;
    case BoundKind::kGraph: {
      if (!in.independence_number || *in.independence_number == 0) {
        throw ConfigError("graph bound needs the independence number");
      }
      const double alpha = static_cast<double>(*in.independence_number);
      return 2.0 * std::sqrt(8.0 * alpha * t * log_b *
                             std::log(16.0 * outcomes * outcomes * t / alpha)) +
             1.0;
    }
    case BoundKind::kDoubling:
      return 25.0 * std::sqrt(2.0 * t * outcomes * log_scale()) + 1.0;
  }
  throw ConfigError("unhandled bound kind");
}

}  // namespace winexp
