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

#include "winexp/curve_feedback.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr double kNegligibleWeight = 1e-18;
constexpr double kSingularDeterminant = 1e-300;
constexpr double kStallTolerance = 1e-14;

double ParseTagArgument(std::string_view tag, std::string_view name) {
  const std::string_view inner =
      tag.substr(name.size() + 1, tag.size() - name.size() - 2);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(inner.data(), inner.data() + inner.size(), value);
  if (ec != std::errc() || ptr != inner.data() + inner.size()) {
    throw ConfigError("bad argument in feedback mode '" + std::string(tag) + "'");
  }
  return value;
}

bool IsCall(std::string_view tag, std::string_view name) {
  return tag.size() > name.size() + 2 && tag.substr(0, name.size()) == name &&
         tag[name.size()] == '(' && tag.back() == ')';
}

struct WeightedPoint {
  double weight;
  double bid;
  double ctr;
};

// Weighted log-likelihood, gradient and Hessian of the logistic model.
struct LogisticState {
  double loglik = 0.0;
  double g0 = 0.0, g1 = 0.0;
  double h00 = 0.0, h01 = 0.0, h11 = 0.0;
};

LogisticState Evaluate(const std::vector<WeightedPoint>& points,
                       const LogisticModel& m) {
  LogisticState s;
  for (const WeightedPoint& p : points) {
    const double z = m.intercept + m.slope * p.bid;
    const double q = 1.0 / (1.0 + std::exp(-z));
    // log q = -log(1 + e^-z), log(1 - q) = -log(1 + e^z)
    const double log_q = -std::log1p(std::exp(-std::abs(z))) - std::max(-z, 0.0);
    const double log_not_q =
        -std::log1p(std::exp(-std::abs(z))) - std::max(z, 0.0);
    s.loglik += p.weight * (p.ctr * log_q + (1.0 - p.ctr) * log_not_q);
    const double r = p.weight * (p.ctr - q);
    s.g0 += r;
    s.g1 += r * p.bid;
    const double c = p.weight * q * (1.0 - q);
    s.h00 += c;
    s.h01 += c * p.bid;
    s.h11 += c * p.bid * p.bid;
  }
  return s;
}

}  // namespace

FeedbackMode FeedbackMode::Parse(std::string_view tag) {
  FeedbackMode mode;
  if (tag == "exact") return mode;
  if (IsCall(tag, "noisy")) {
    mode.kind = Kind::kNoisy;
    mode.samples = ParseTagArgument(tag, "noisy");
    if (!(mode.samples >= 1.0)) throw ConfigError("noisy(m) needs m >= 1");
    return mode;
  }
  if (IsCall(tag, "bandit-regression")) {
    mode.kind = Kind::kBanditRegression;
    mode.gamma = ParseTagArgument(tag, "bandit-regression");
    if (!(mode.gamma > 0.0 && mode.gamma <= 1.0)) {
      throw ConfigError("bandit-regression(gamma) needs gamma in (0, 1]");
    }
    return mode;
  }
  if (tag == "bandit-regression") {
    mode.kind = Kind::kBanditRegression;
    return mode;
  }
  throw ConfigError("unknown feedback mode '" + std::string(tag) + "'");
}

std::string FeedbackMode::ToString() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kExact:
      out << "exact";
      break;
    case Kind::kNoisy:
      out << "noisy(" << samples << ")";
      break;
    case Kind::kBanditRegression:
      out << "bandit-regression(" << gamma << ")";
      break;
  }
  return out.str();
}

double NoiseSpec::StandardDeviation() const {
  Validate();
  return 1.0 / std::sqrt(samples);
}

void NoiseSpec::Validate() const {
  if (!(samples >= 1.0)) throw InvalidArgument("noise needs m >= 1");
}

std::vector<double> PerturbSlotCtrs(std::span<const double> slot_ctrs,
                                    const NoiseSpec& spec, Rng& rng) {
  std::normal_distribution<double> noise(0.0, spec.StandardDeviation());
  std::vector<double> out(slot_ctrs.size());
  for (std::size_t s = 0; s < slot_ctrs.size(); ++s) {
    out[s] = std::clamp(slot_ctrs[s] + noise(rng), 0.0, 1.0);
  }
  return out;
}

GspCurves RebuildCurves(const GspCurves& curves,
                        std::span<const double> slot_ctrs) {
  GspCurves out = curves;
  for (std::size_t b = 0; b < out.ctr.size(); ++b) {
    const std::size_t slot = out.slot[b];
    if (slot == 0) continue;
    if (slot > slot_ctrs.size()) {
      throw InvalidArgument("curve refers to a slot without a CTR");
    }
    out.ctr[b] = slot_ctrs[slot - 1];
  }
  return out;
}

GspCurves NoisyCurves(const GspCurves& curves,
                      std::span<const double> slot_ctrs, const NoiseSpec& spec,
                      Rng& rng) {
  return RebuildCurves(curves, PerturbSlotCtrs(slot_ctrs, spec, rng));
}

RegressionHistory::RegressionHistory(double gamma) : gamma_(gamma) {
  if (!(gamma_ > 0.0 && gamma_ <= 1.0)) {
    throw InvalidArgument("recency decay must lie in (0, 1]");
  }
}

void RegressionHistory::Add(const RegressionEntry& entry) {
  if (!entries_.empty() && entry.round < entries_.back().round) {
    throw InvalidArgument("regression history must be chronological");
  }
  if (!(entry.ctr >= 0.0 && entry.ctr <= 1.0)) {
    throw InvalidArgument("realized CTR outside [0, 1]");
  }
  if (!first_bid_) {
    first_bid_ = entry.bid;
  } else if (entry.bid != *first_bid_) {
    distinct_bids_ = true;
  }
  if (entry.payment) {
    if (!first_paid_bid_) {
      first_paid_bid_ = entry.bid;
    } else if (entry.bid != *first_paid_bid_) {
      distinct_paid_bids_ = true;
    }
  }
  entries_.push_back(entry);
}

bool RegressionHistory::HasDistinctBids() const { return distinct_bids_; }
bool RegressionHistory::HasDistinctPaidBids() const {
  return distinct_paid_bids_;
}

double LogisticModel::Evaluate(double bid) const {
  return 1.0 / (1.0 + std::exp(-(intercept + slope * bid)));
}

LogisticModel FitLogistic(const RegressionHistory& history,
                          std::optional<LogisticModel> warm_start) {
  if (!history.HasDistinctBids()) {
    throw FitDegenerate("logistic fit needs two distinct bids");
  }
  const auto entries = history.entries();
  const std::size_t now = entries.back().round;
  // The likelihood is linear in the responses, so entries sharing a bid
  // collapse into one point with summed weight and weighted mean response.
  std::map<double, std::pair<double, double>> by_bid;
  for (std::size_t i = entries.size(); i-- > 0;) {
    const double w =
        std::pow(history.gamma(), static_cast<double>(now - entries[i].round));
    if (w < kNegligibleWeight) break;
    auto& [weight, weighted_ctr] = by_bid[entries[i].bid];
    weight += w;
    weighted_ctr += w * entries[i].ctr;
  }
  std::vector<WeightedPoint> points;
  points.reserve(by_bid.size());
  for (const auto& [bid, sums] : by_bid) {
    points.push_back({sums.first, bid, sums.second / sums.first});
  }
  LogisticModel model = warm_start.value_or(LogisticModel{});
  LogisticState state = Evaluate(points, model);
  for (int iter = 0; iter < kLogisticMaxIterations; ++iter) {
    if (std::hypot(state.g0, state.g1) <= kLogisticTolerance) break;
    const double det = state.h00 * state.h11 - state.h01 * state.h01;
    if (!(det > kSingularDeterminant)) break;
    const double d0 = (state.h11 * state.g0 - state.h01 * state.g1) / det;
    const double d1 = (state.h00 * state.g1 - state.h01 * state.g0) / det;
    double step = 1.0;
    bool improved = false;
    bool stalled = false;
    for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
      const LogisticModel trial{model.intercept + step * d0,
                                model.slope + step * d1};
      const LogisticState next = Evaluate(points, trial);
      if (next.loglik >= state.loglik) {
        stalled = next.loglik - state.loglik <=
                  kStallTolerance * (1.0 + std::abs(state.loglik));
        model = trial;
        state = next;
        improved = true;
        break;
      }
    }
    if (!improved || stalled) break;
  }
  return model;
}

AllocationCurve LogisticAllocation(const LogisticModel& model,
                                   const BidGrid& grid) {
  std::vector<double> ctr(grid.size());
  for (std::size_t b = 0; b < grid.size(); ++b) {
    ctr[b] = std::clamp(model.Evaluate(grid[b]), kLogisticClamp,
                        1.0 - kLogisticClamp);
  }
  return AllocationCurve::Binary(ctr);
}

AllocationCurve LogisticFit(const RegressionHistory& history,
                            const BidGrid& grid) {
  return LogisticAllocation(FitLogistic(history), grid);
}

LinearModel FitLinear(const RegressionHistory& history) {
  if (!history.HasDistinctPaidBids()) {
    throw FitDegenerate("linear fit needs two distinct paid bids");
  }
  double n = 0.0, sx = 0.0, sy = 0.0;
  for (const RegressionEntry& e : history.entries()) {
    if (!e.payment) continue;
    n += 1.0;
    sx += e.bid;
    sy += *e.payment;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const RegressionEntry& e : history.entries()) {
    if (!e.payment) continue;
    sxx += (e.bid - mx) * (e.bid - mx);
    sxy += (e.bid - mx) * (*e.payment - my);
  }
  const double slope = sxy / sxx;
  return LinearModel{my - slope * mx, slope};
}

PaymentCurve LinearPayment(const LinearModel& model, const BidGrid& grid) {
  std::vector<double> pay(grid.size());
  for (std::size_t b = 0; b < grid.size(); ++b) {
    pay[b] = std::clamp(model.Evaluate(grid[b]), 0.0, 1.0);
  }
  return PaymentCurve(std::move(pay));
}

PaymentCurve LinearFit(const RegressionHistory& history, const BidGrid& grid) {
  return LinearPayment(FitLinear(history), grid);
}

}  // namespace winexp
