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

#ifndef WINEXP_CURVE_FEEDBACK_H_
#define WINEXP_CURVE_FEEDBACK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "winexp/auctions.h"
#include "winexp/bid_distribution.h"
#include "winexp/bid_grid.h"
#include "winexp/outcome_model.h"

namespace winexp {

// Feedback mode tags: "exact", "noisy(m)", "bandit-regression(gamma)".
struct FeedbackMode {
  enum class Kind { kExact, kNoisy, kBanditRegression };
  Kind kind = Kind::kExact;
  double samples = 0.0;  // m, noisy only
  double gamma = 0.99;   // recency decay, bandit-regression only

  // Throws ConfigError on malformed tags, m < 1 or gamma outside (0, 1].
  static FeedbackMode Parse(std::string_view tag);
  std::string ToString() const;
};

// Additive N(0, 1/m) noise on every slot CTR.
struct NoiseSpec {
  double samples = 1.0;
  double StandardDeviation() const;
  void Validate() const;
};

// One noise draw per slot, results clamped to [0, 1].
std::vector<double> PerturbSlotCtrs(std::span<const double> slot_ctrs,
                                    const NoiseSpec& spec, Rng& rng);

// Rebuilds the learner-visible CTR curve from perturbed slot CTRs. Per-click
// payments do not depend on CTRs and are kept.
GspCurves RebuildCurves(const GspCurves& curves,
                        std::span<const double> slot_ctrs);

// Exact curves plus one perturbed draw; the learner sees the result.
GspCurves NoisyCurves(const GspCurves& curves,
                      std::span<const double> slot_ctrs, const NoiseSpec& spec,
                      Rng& rng);

struct RegressionEntry {
  std::size_t round = 0;
  double bid = 0.0;
  double ctr = 0.0;
  std::optional<double> payment;  // observed on clicked rounds only
};

// Chronological (bid, realized CTR, payment) observations of the played bid.
class RegressionHistory {
 public:
  explicit RegressionHistory(double gamma = 0.99);

  // Throws InvalidArgument on out-of-order rounds or CTR outside [0, 1].
  void Add(const RegressionEntry& entry);

  double gamma() const { return gamma_; }
  std::span<const RegressionEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool HasDistinctBids() const;
  bool HasDistinctPaidBids() const;

 private:
  double gamma_;
  std::vector<RegressionEntry> entries_;
  std::optional<double> first_bid_;
  std::optional<double> first_paid_bid_;
  bool distinct_bids_ = false;
  bool distinct_paid_bids_ = false;
};

// CTR(b) = 1 / (1 + exp(-(intercept + slope b))).
struct LogisticModel {
  double intercept = 0.0;
  double slope = 0.0;
  double Evaluate(double bid) const;
};

inline constexpr double kLogisticClamp = 1e-6;
inline constexpr double kLogisticTolerance = 1e-8;
inline constexpr int kLogisticMaxIterations = 100;

// Weighted maximum likelihood with weights gamma^(t_now - t), t_now being the
// newest round, by damped Newton steps until the gradient norm is at most
// kLogisticTolerance, the likelihood stops improving, or after
// kLogisticMaxIterations steps. Throws FitDegenerate
// without two distinct bids.
LogisticModel FitLogistic(const RegressionHistory& history,
                          std::optional<LogisticModel> warm_start = std::nullopt);

// Fitted curve on the grid, clamped to [kLogisticClamp, 1 - kLogisticClamp].
AllocationCurve LogisticAllocation(const LogisticModel& model,
                                   const BidGrid& grid);
AllocationCurve LogisticFit(const RegressionHistory& history,
                            const BidGrid& grid);

struct LinearModel {
  double intercept = 0.0;
  double slope = 0.0;
  double Evaluate(double bid) const { return intercept + slope * bid; }
};

// Unweighted least squares of payment on bid over entries with a payment.
// Throws FitDegenerate without two distinct such bids.
LinearModel FitLinear(const RegressionHistory& history);
// Fitted payments on the grid, clamped to [0, 1].
PaymentCurve LinearPayment(const LinearModel& model, const BidGrid& grid);
PaymentCurve LinearFit(const RegressionHistory& history, const BidGrid& grid);

}  // namespace winexp

#endif  // WINEXP_CURVE_FEEDBACK_H_
