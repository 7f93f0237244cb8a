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

#ifndef WINEXP_LEARNER_H_
#define WINEXP_LEARNER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "winexp/bid_distribution.h"
#include "winexp/bid_grid.h"
#include "winexp/estimators.h"
#include "winexp/feedback_graph.h"
#include "winexp/outcome_model.h"

namespace winexp {

enum class EstimatorKind {
  kWinOnly,
  kOutcome,
  kBatch,
  kBatchMean,
  kBatchScaled,
  kGraph,
  kExp3,
};

// "win-only", "outcome", "batch", "batch-mean", "batch-scaled", "graph",
// "exp3". Parse throws ConfigError on unknown tags.
std::string_view ToString(EstimatorKind kind);
EstimatorKind ParseEstimatorKind(std::string_view tag);

// Tuned step sizes (natural logarithms):
//   win-only      sqrt(2 ln|B| / (5T))
//   outcome/batch sqrt(ln|B| / (2T|O|))
//   graph         sqrt(ln|B| / (8 T a ln(16 |O|^2 T / a)))
//   exp3          sqrt(2 ln|B| / (T |B|))
// `independence_number` is required for the graph kind only.
double StepSize(EstimatorKind kind, std::size_t horizon, std::size_t grid_size,
                std::size_t num_outcomes,
                std::optional<std::size_t> independence_number = std::nullopt);

// One round of feedback, one alternative per estimator family. Members are
// views that only need to outlive the Learner::Update call.
struct WinOnlyFeedback {
  std::span<const double> win_probability;
  bool won = false;
  std::span<const double> win_reward;  // read only when won
};
struct OutcomeFeedback {
  const AllocationCurve& allocation;
  std::size_t realized;
  std::span<const double> reward_row;
};
struct BatchRoundFeedback {
  const AllocationCurve& allocation;
  const BatchFeedback& batch;
  std::size_t submitted;
  std::size_t max_batch;  // used by batch-scaled
};
struct GraphFeedback {
  const AllocationCurve& allocation;
  std::size_t realized;
  const RewardTable& rewards;
  const FeedbackGraph& graph;
  double threshold;
};
struct BanditFeedback {
  std::size_t submitted;
  double realized_utility;
};
using FeedbackRecord = std::variant<WinOnlyFeedback, OutcomeFeedback,
                                    BatchRoundFeedback, GraphFeedback,
                                    BanditFeedback>;

// Exponential weights over a bid grid driven by one estimator kind.
class Learner {
 public:
  Learner(BidGrid grid, EstimatorKind kind, double eta, std::size_t horizon);

  const BidGrid& grid() const { return grid_; }
  const BidDistribution& distribution() const { return dist_; }
  EstimatorKind kind() const { return kind_; }
  double eta() const { return eta_; }
  std::size_t round() const { return round_; }
  std::size_t horizon() const { return horizon_; }

  std::size_t SampleBid(Rng& rng) const { return dist_.Sample(rng); }

  // Estimates utilities from `feedback`, applies the exponential-weights
  // update and advances the round counter. Returns the estimate used. Throws
  // ConfigError when the feedback alternative does not match kind() and
  // InvariantViolation when called after the horizon.
  const UtilityEstimate& Update(const FeedbackRecord& feedback);

 private:
  BidGrid grid_;
  BidDistribution dist_;
  EstimatorKind kind_;
  double eta_;
  std::size_t round_ = 0;
  std::size_t horizon_;
  UtilityEstimate last_estimate_;
};

// Restart schedule for unknown T, L and piece width. Keeps two stage bounds,
// on the round count and on log(max{t L, 1/gap}); both start at 1 and are
// doubled when violated, which forces a restart from the uniform
// distribution. Within a stage the grid resolution is exp(-log bound), which
// is at most min{1/(L t), gap} for every round the stage covers.
struct DoublingLimits {
  std::size_t max_horizon = std::size_t{1} << 20;
  double max_log_bound = 64.0;
};

class DoublingSchedule {
 public:
  explicit DoublingSchedule(DoublingLimits limits = {});

  // Checks the stage conditions for global round t (1-based) given the
  // Lipschitz constant and the current piece-width estimate. Doubles every
  // violated bound until it holds and returns true when a restart is due.
  // Throws ConfigError when a bound would exceed its limit.
  bool Advance(std::size_t t, double lipschitz, double gap_estimate);

  double horizon_bound() const { return horizon_bound_; }
  double log_bound() const { return log_bound_; }
  std::size_t horizon_restarts() const { return horizon_restarts_; }
  std::size_t log_restarts() const { return log_restarts_; }
  std::size_t restarts() const { return restarts_; }

  double StageResolution() const;
  // sqrt(log(1/eps) / (2 B_T |O|)).
  double StageStepSize(std::size_t num_outcomes) const;

 private:
  DoublingLimits limits_;
  double horizon_bound_ = 1.0;
  double log_bound_ = 1.0;
  std::size_t horizon_restarts_ = 0;
  std::size_t log_restarts_ = 0;
  std::size_t restarts_ = 0;
};

}  // namespace winexp

#endif  // WINEXP_LEARNER_H_
