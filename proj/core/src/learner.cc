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

#include "winexp/learner.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr std::array<std::pair<EstimatorKind, std::string_view>, 7> kKindTags{{
    {EstimatorKind::kWinOnly, "win-only"},
    {EstimatorKind::kOutcome, "outcome"},
    {EstimatorKind::kBatch, "batch"},
    {EstimatorKind::kBatchMean, "batch-mean"},
    {EstimatorKind::kBatchScaled, "batch-scaled"},
    {EstimatorKind::kGraph, "graph"},
    {EstimatorKind::kExp3, "exp3"},
}};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void Mismatch(EstimatorKind kind, const char* got) {
  throw ConfigError("learner '" + std::string(ToString(kind)) +
                    "' received " + got + " feedback");
}

}  // namespace

std::string_view ToString(EstimatorKind kind) {
  for (const auto& [k, tag] : kKindTags) {
    if (k == kind) return tag;
  }
  return "unknown";
}

EstimatorKind ParseEstimatorKind(std::string_view tag) {
  for (const auto& [k, name] : kKindTags) {
    if (name == tag) return k;
  }
  throw ConfigError("unknown estimator kind '" + std::string(tag) + "'");
}

double StepSize(EstimatorKind kind, std::size_t horizon, std::size_t grid_size,
                std::size_t num_outcomes,
                std::optional<std::size_t> independence_number) {
  if (horizon == 0) throw InvalidArgument("horizon must be >= 1");
  if (grid_size < 2) throw InvalidArgument("step size needs |B| >= 2");
  const double t = static_cast<double>(horizon);
  const double log_b = std::log(static_cast<double>(grid_size));
  const double outcomes = static_cast<double>(num_outcomes);
  switch (kind) {
    case EstimatorKind::kWinOnly:
      return std::sqrt(2.0 * log_b / (5.0 * t));
    case EstimatorKind::kOutcome:
    case EstimatorKind::kBatch:
    case EstimatorKind::kBatchMean:
    case EstimatorKind::kBatchScaled:
      if (num_outcomes == 0) throw InvalidArgument("|O| must be >= 1");
      return std::sqrt(log_b / (2.0 * t * outcomes));
    case EstimatorKind::kGraph: {
      if (!independence_number || *independence_number == 0) {
        throw InvalidArgument("graph step size needs the independence number");
      }
      const double alpha = static_cast<double>(*independence_number);
      const double inner = std::log(16.0 * outcomes * outcomes * t / alpha);
      return std::sqrt(log_b / (8.0 * t * alpha * inner));
    }
    case EstimatorKind::kExp3:
      return std::sqrt(2.0 * log_b / (t * static_cast<double>(grid_size)));
  }
  throw ConfigError("unhandled estimator kind");
}

Learner::Learner(BidGrid grid, EstimatorKind kind, double eta,
                 std::size_t horizon)
    : grid_(std::move(grid)),
      dist_(BidDistribution::Uniform(grid_)),
      kind_(kind),
      eta_(eta),
      horizon_(horizon) {
  if (!(eta_ > 0.0)) throw InvalidArgument("step size must be positive");
  if (horizon_ == 0) throw InvalidArgument("horizon must be >= 1");
}

const UtilityEstimate& Learner::Update(const FeedbackRecord& feedback) {
  if (round_ >= horizon_) {
    throw InvariantViolation("learner updated past its horizon");
  }
  last_estimate_ = std::visit(
      Overloaded{
          [&](const WinOnlyFeedback& f) {
            if (kind_ != EstimatorKind::kWinOnly) Mismatch(kind_, "win-only");
            return WinOnlyEstimate(dist_, f.win_probability, f.won,
                                   f.win_reward);
          },
          [&](const OutcomeFeedback& f) {
            if (kind_ != EstimatorKind::kOutcome) Mismatch(kind_, "outcome");
            return OutcomeEstimate(dist_, f.allocation, f.realized,
                                   f.reward_row);
          },
          [&](const BatchRoundFeedback& f) {
            switch (kind_) {
              case EstimatorKind::kBatch:
                return BatchEstimate(dist_, f.allocation, f.batch);
              case EstimatorKind::kBatchMean:
                return BatchEstimateMeanVariant(dist_, f.allocation, f.batch,
                                                f.submitted);
              case EstimatorKind::kBatchScaled:
                return ScaledBatchEstimate(dist_, f.allocation, f.batch,
                                           f.submitted, f.max_batch);
              default:
                Mismatch(kind_, "batch");
            }
          },
          [&](const GraphFeedback& f) {
            if (kind_ != EstimatorKind::kGraph) Mismatch(kind_, "graph");
            return GraphEstimate(dist_, f.allocation, f.realized, f.rewards,
                                 f.graph, f.threshold);
          },
          [&](const BanditFeedback& f) {
            if (kind_ != EstimatorKind::kExp3) Mismatch(kind_, "bandit");
            return Exp3Estimate(dist_, f.submitted, f.realized_utility);
          },
      },
      feedback);
  dist_.ApplyExpWeights(last_estimate_, eta_);
  ++round_;
  return last_estimate_;
}

DoublingSchedule::DoublingSchedule(DoublingLimits limits) : limits_(limits) {}

bool DoublingSchedule::Advance(std::size_t t, double lipschitz,
                               double gap_estimate) {
  if (t == 0) throw InvalidArgument("rounds are numbered from 1");
  if (t > limits_.max_horizon) {
    throw ConfigError("round count exceeds the doubling horizon limit");
  }
  if (!(gap_estimate > 0.0)) throw InvalidArgument("gap estimate must be > 0");
  bool restart = false;
  const double rounds = static_cast<double>(t);
  if (rounds > horizon_bound_) {
    while (rounds > horizon_bound_) horizon_bound_ *= 2.0;
    ++horizon_restarts_;
    restart = true;
  }
  const double log_term =
      std::log(std::max(rounds * lipschitz, 1.0 / gap_estimate));
  if (log_term > log_bound_) {
    while (log_term > log_bound_) log_bound_ *= 2.0;
    if (log_bound_ > limits_.max_log_bound) {
      throw ConfigError("log(max{tL, 1/gap}) exceeds the doubling cap");
    }
    ++log_restarts_;
    restart = true;
  }
  if (restart) ++restarts_;
  return restart;
}

double DoublingSchedule::StageResolution() const {
  return std::exp(-log_bound_);
}

double DoublingSchedule::StageStepSize(std::size_t num_outcomes) const {
  return std::sqrt(log_bound_ /
                   (2.0 * horizon_bound_ * static_cast<double>(num_outcomes)));
}

}  // namespace winexp
