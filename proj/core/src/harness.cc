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

#include "winexp/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "winexp/auctions.h"
#include "winexp/curve_feedback.h"
#include "winexp/discretization.h"
#include "winexp/errors.h"
#include "winexp/estimators.h"
#include "winexp/feedback_graph.h"
#include "winexp/hindsight.h"
#include "winexp/value_process.h"

namespace winexp {
namespace {

constexpr std::uint64_t kEnvironmentStream = 1;
constexpr std::uint64_t kValueStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kMarketStream = 4;
constexpr std::uint64_t kAdversaryStreamBase = 100;
constexpr std::uint64_t kLearnerStreamBase = 1000;
constexpr int kCsvDigits = 9;

double Quantize(double bid, double quantum) {
  if (quantum <= 0.0) return bid;
  return std::clamp(std::round(bid / quantum) * quantum, 0.0, 1.0);
}

// The learner's view of the round: the truth for exact feedback, perturbed
// or fitted curves otherwise.
struct VisibleModel {
  AllocationCurve alloc;
  RewardTable rewards;
};

struct GraphContext {
  const FeedbackGraph* graph = nullptr;
  double threshold = 0.0;
};

void UpdateLearner(Learner& learner, const RoundFeedback& truth,
                   const VisibleModel& visible, const GraphContext& graph) {
  const std::size_t o = truth.realized_outcome;
  switch (learner.kind()) {
    case EstimatorKind::kWinOnly: {
      const std::vector<double> x = visible.alloc.table().Column(kWinOutcome);
      const bool won = o == kWinOutcome;
      std::vector<double> reward;
      if (won) reward = visible.rewards.ForOutcome(kWinOutcome);
      learner.Update(WinOnlyFeedback{x, won, reward});
      return;
    }
    case EstimatorKind::kOutcome: {
      const std::vector<double> row = visible.rewards.ForOutcome(o);
      learner.Update(OutcomeFeedback{visible.alloc, o, row});
      return;
    }
    case EstimatorKind::kGraph:
      learner.Update(GraphFeedback{visible.alloc, o, visible.rewards,
                                   *graph.graph, graph.threshold});
      return;
    case EstimatorKind::kExp3:
      learner.Update(BanditFeedback{truth.submitted, truth.realized_utility});
      return;
    default:
      throw ConfigError("learner '" + std::string(ToString(learner.kind())) +
                        "' needs batch feedback");
  }
}

// sum_b pi(b) E[u~(b)^2] for the learner's current distribution.
double MomentTerm(const Learner& learner, const RoundFeedback& truth,
                  std::span<const double> counterfactual,
                  const GraphContext& graph) {
  const BidDistribution& dist = learner.distribution();
  std::vector<double> moment;
  switch (learner.kind()) {
    case EstimatorKind::kWinOnly:
      moment = WinOnlySecondMoment(dist,
                                   truth.alloc.table().Column(kWinOutcome),
                                   truth.rewards.ForOutcome(kWinOutcome));
      break;
    case EstimatorKind::kOutcome:
      moment = OutcomeSecondMoment(dist, truth.alloc, truth.rewards);
      break;
    case EstimatorKind::kGraph:
      moment = GraphSecondMoment(dist, truth.alloc, truth.rewards,
                                 *graph.graph, graph.threshold);
      break;
    case EstimatorKind::kExp3: {
      std::vector<double> shortfall(counterfactual.size());
      for (std::size_t b = 0; b < shortfall.size(); ++b) {
        shortfall[b] = (counterfactual[b] - 1.0) * (counterfactual[b] - 1.0);
      }
      moment = Exp3SecondMoment(dist, shortfall);
      break;
    }
    default:
      return 0.0;
  }
  double total = 0.0;
  for (std::size_t b = 0; b < moment.size(); ++b) total += dist[b] * moment[b];
  return total;
}

struct TrackedLearner {
  Learner learner;
  Rng rng;
  HindsightTracker tracker;
  LearnerTrace trace;
  RegressionHistory history;
  std::optional<LogisticModel> warm_start;
};

struct AdaptiveAdversary {
  Learner learner;
  Rng rng;
};

class ReplicationRunner {
 public:
  ReplicationRunner(const ScenarioConfig& cfg, std::size_t replication);

  ReplicationTrace Run();

 private:
  void SingleItemRound(std::size_t t);
  void UnitDemandRound(std::size_t t);
  void GspRound(std::size_t t);
  void BatchRound(std::size_t t);

  std::vector<double> DrawSlotCtrs();
  winexp::GspRound DrawSeat();
  VisibleModel RegressionView(TrackedLearner& l, std::size_t t,
                              const RoundFeedback& truth,
                              const GspCurves& exact);
  void Feed(TrackedLearner& l, const RoundFeedback& truth,
            const VisibleModel& visible, std::span<const double> counterfactual,
            bool exact_view);
  void Record(TrackedLearner& l, std::span<const double> counterfactual,
              double realized);

  const ScenarioConfig& cfg_;
  std::size_t replication_;
  BidGrid grid_;
  Rng env_;
  Rng noise_;
  std::vector<double> values_;
  std::size_t values_per_round_ = 1;
  std::vector<TrackedLearner> learners_;
  std::optional<FeedbackGraph> graph_;
  GraphContext graph_ctx_;
  std::vector<double> fixed_ctrs_;
  std::vector<GspBidder> others_;
  std::optional<AdaptiveAdversary> market_;
  std::vector<AdaptiveAdversary> adversaries_;
};

ReplicationRunner::ReplicationRunner(const ScenarioConfig& cfg,
                                     std::size_t replication)
    : cfg_(cfg),
      replication_(replication),
      grid_(MakeGrid(cfg.epsilon)),
      env_(StreamRng(cfg.seed, replication, kEnvironmentStream)),
      noise_(StreamRng(cfg.seed, replication, kNoiseStream)) {
  cfg.Validate();
  const std::size_t outcomes = cfg.NumOutcomes();
  if (cfg.environment == EnvironmentKind::kUnitDemand) {
    values_per_round_ = cfg.items;
    graph_.emplace(ParseGraphLiteral(OutcomeSet::Indexed(outcomes), cfg.graph));
    graph_ctx_ = {&*graph_, GraphThreshold(outcomes, cfg.horizon)};
  } else if (cfg.environment == EnvironmentKind::kGspBatch) {
    values_per_round_ = cfg.batch_size;
  }
  Rng value_rng = StreamRng(cfg.seed, replication, kValueStream);
  const ValueProcess values = ValueProcess::Generate(
      cfg.value, cfg.horizon * values_per_round_, value_rng);
  values_.assign(values.values().begin(), values.values().end());

  const std::size_t alpha = graph_ ? IndependenceNumber(*graph_) : 0;
  for (std::size_t i = 0; i < cfg.learners.size(); ++i) {
    const EstimatorKind kind = cfg.learners[i];
    const bool graph_kind = kind == EstimatorKind::kGraph;
    const double eta =
        StepSize(kind, cfg.horizon, grid_.size(), outcomes,
                 graph_kind ? std::optional<std::size_t>(alpha) : std::nullopt);
    LearnerTrace trace;
    trace.learner = std::string(ToString(kind));
    trace.eta = eta;
    trace.grid_size = grid_.size();
    trace.num_outcomes = outcomes;
    trace.independence_number = graph_kind ? alpha : 0;
    trace.bias_allowance =
        graph_kind ? 2.0 * graph_ctx_.threshold * static_cast<double>(outcomes)
                   : 0.0;
    trace.moments_available =
        cfg.feedback.kind == FeedbackMode::Kind::kExact &&
        cfg.environment != EnvironmentKind::kGspBatch;
    trace.cumulative_regret.reserve(cfg.horizon);
    const double gamma =
        cfg.feedback.kind == FeedbackMode::Kind::kBanditRegression
            ? cfg.feedback.gamma
            : 1.0;
    learners_.push_back(TrackedLearner{
        Learner(grid_, kind, eta, cfg.horizon),
        StreamRng(cfg.seed, replication, kLearnerStreamBase + i),
        HindsightTracker(grid_.size()), std::move(trace),
        RegressionHistory(gamma), std::nullopt});
  }

  const bool gsp = cfg.environment == EnvironmentKind::kGsp ||
                   cfg.environment == EnvironmentKind::kGspBatch;
  if (gsp) {
    others_.resize(cfg.bidders - 1);
    if (cfg.ctr_mode == CtrMode::kFixed) fixed_ctrs_ = DrawSlotCtrs();
    if (cfg.adversary != AdversaryMode::kStochastic) {
      const EstimatorKind market = cfg.market_learner;
      market_.emplace(AdaptiveAdversary{
          Learner(grid_, market, StepSize(market, cfg.horizon, grid_.size(), 2),
                  cfg.horizon),
          StreamRng(cfg.seed, replication, kMarketStream)});
      const EstimatorKind kind = cfg.adversary == AdversaryMode::kAdaptiveExp3
                                     ? EstimatorKind::kExp3
                                     : EstimatorKind::kWinOnly;
      for (std::size_t j = 0; j < cfg.adaptive_count; ++j) {
        adversaries_.push_back(AdaptiveAdversary{
            Learner(grid_, kind, StepSize(kind, cfg.horizon, grid_.size(), 2),
                    cfg.horizon),
            StreamRng(cfg.seed, replication, kAdversaryStreamBase + j)});
      }
    }
  }
}

ReplicationTrace ReplicationRunner::Run() {
  for (std::size_t t = 0; t < cfg_.horizon; ++t) {
    switch (cfg_.environment) {
      case EnvironmentKind::kSecondPrice:
      case EnvironmentKind::kFirstPrice:
      case EnvironmentKind::kAllPay:
        SingleItemRound(t);
        break;
      case EnvironmentKind::kUnitDemand:
        UnitDemandRound(t);
        break;
      case EnvironmentKind::kGsp:
        GspRound(t);
        break;
      case EnvironmentKind::kGspBatch:
        BatchRound(t);
        break;
    }
  }
  ReplicationTrace out{cfg_.name, replication_, {}};
  for (TrackedLearner& l : learners_) out.learners.push_back(std::move(l.trace));
  return out;
}

void ReplicationRunner::Record(TrackedLearner& l,
                               std::span<const double> counterfactual,
                               double realized) {
  l.tracker.Record(counterfactual, realized);
  l.trace.cumulative_regret.push_back(l.tracker.Regret());
}

void ReplicationRunner::Feed(TrackedLearner& l, const RoundFeedback& truth,
                             const VisibleModel& visible,
                             std::span<const double> counterfactual,
                             bool exact_view) {
  if (exact_view) {
    l.trace.moment_sum += MomentTerm(l.learner, truth, counterfactual, graph_ctx_);
  }
  try {
    UpdateLearner(l.learner, truth, visible, graph_ctx_);
  } catch (const InconsistentFeedback&) {
    ++l.trace.skipped_updates;
  }
  Record(l, counterfactual, truth.realized_utility);
}

void ReplicationRunner::SingleItemRound(std::size_t t) {
  std::vector<double> others(cfg_.bidders - 1);
  for (double& b : others) {
    b = Quantize(cfg_.adversary_bid.Sample(env_), cfg_.bid_quantum);
  }
  const double value = values_[t];
  std::vector<double> counterfactual;
  for (TrackedLearner& l : learners_) {
    const std::size_t bid = l.learner.SampleBid(l.rng);
    RoundFeedback truth = [&] {
      switch (cfg_.environment) {
        case EnvironmentKind::kFirstPrice:
          return FirstPriceRound(grid_, bid, others, value);
        case EnvironmentKind::kAllPay:
          return AllPayRound(grid_, bid, others, value);
        default:
          return SecondPriceRound(grid_, bid, others, value);
      }
    }();
    if (counterfactual.empty()) counterfactual = truth.Counterfactual();
    const VisibleModel visible{truth.alloc, truth.rewards};
    Feed(l, truth, visible, counterfactual, true);
  }
}

void ReplicationRunner::UnitDemandRound(std::size_t t) {
  const std::size_t items = cfg_.items;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights(items + 1), prices(items);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log1p(-unit(env_));
    total += w;
  }
  for (double& w : weights) w /= total;
  weights.pop_back();
  for (double& p : prices) p = unit(env_);
  const double coupling = unit(env_);
  const std::span<const double> values(values_.data() + t * items, items);
  const UnitDemandRule rule = LinearUnitDemandRule(grid_, weights, prices);
  std::vector<double> counterfactual;
  for (TrackedLearner& l : learners_) {
    const std::size_t bid = l.learner.SampleBid(l.rng);
    const RoundFeedback truth = winexp::UnitDemandRound(
        grid_, bid, rule.allocation, rule.item_payments, values, coupling);
    if (counterfactual.empty()) counterfactual = truth.Counterfactual();
    Feed(l, truth, VisibleModel{truth.alloc, truth.rewards}, counterfactual,
         true);
  }
}

std::vector<double> ReplicationRunner::DrawSlotCtrs() {
  std::vector<double> ctrs(cfg_.slots);
  for (double& c : ctrs) c = cfg_.ctr.Sample(env_);
  std::sort(ctrs.begin(), ctrs.end(), std::greater<>());
  return ctrs;
}

winexp::GspRound ReplicationRunner::DrawSeat() {
  winexp::GspRound seat;
  seat.learner_score = cfg_.score.Sample(env_);
  for (std::size_t j = 0; j < others_.size(); ++j) {
    others_[j].score = cfg_.score.Sample(env_);
    if (j < adversaries_.size()) {
      others_[j].bid = grid_[adversaries_[j].learner.SampleBid(adversaries_[j].rng)];
    } else {
      others_[j].bid = Quantize(cfg_.adversary_bid.Sample(env_), cfg_.bid_quantum);
    }
  }
  seat.others = others_;
  seat.reserve = cfg_.reserve;
  seat.slot_ctrs =
      cfg_.ctr_mode == CtrMode::kFixed ? fixed_ctrs_ : DrawSlotCtrs();
  seat.click_threshold = std::uniform_real_distribution<double>(0.0, 1.0)(env_);
  return seat;
}

VisibleModel ReplicationRunner::RegressionView(TrackedLearner& l, std::size_t t,
                                               const RoundFeedback& truth,
                                               const GspCurves& exact) {
  const std::size_t bid = truth.submitted;
  const bool clicked = truth.realized_outcome == kWinOutcome;
  RegressionEntry entry{t, grid_[bid], exact.ctr[bid], std::nullopt};
  if (clicked) entry.payment = exact.payment[bid];
  l.history.Add(entry);
  std::vector<double> ctr = exact.ctr;
  if (l.history.HasDistinctBids()) {
    l.warm_start = FitLogistic(l.history, l.warm_start);
    ctr = LogisticAllocation(*l.warm_start, grid_).table().Column(kWinOutcome);
  }
  std::vector<double> payment = exact.payment;
  if (l.history.HasDistinctPaidBids()) {
    const PaymentCurve fitted = LinearFit(l.history, grid_);
    payment.assign(fitted.values().begin(), fitted.values().end());
  }
  std::vector<double> win_reward(grid_.size(), 0.0);
  if (clicked) {
    for (std::size_t b = 0; b < grid_.size(); ++b) {
      win_reward[b] = ClampUtility(*truth.value_revealed - payment[b]);
    }
  }
  return VisibleModel{AllocationCurve::Binary(ctr),
                      RewardTable::Binary(win_reward)};
}

void ReplicationRunner::GspRound(std::size_t t) {
  const winexp::GspRound seat = DrawSeat();
  const double value = values_[t];
  const GspCurves exact = ComputeGspCurves(grid_, seat);
  std::optional<AllocationCurve> noisy;
  if (cfg_.feedback.kind == FeedbackMode::Kind::kNoisy) {
    const GspCurves seen = NoisyCurves(exact, seat.slot_ctrs,
                                       NoiseSpec{cfg_.feedback.samples}, noise_);
    noisy.emplace(AllocationCurve::Binary(seen.ctr));
  }
  std::vector<double> counterfactual;
  for (TrackedLearner& l : learners_) {
    const std::size_t bid = l.learner.SampleBid(l.rng);
    const RoundFeedback truth =
        GspRoundFeedback(grid_, bid, exact, seat.click_threshold, value);
    if (counterfactual.empty()) counterfactual = truth.Counterfactual();
    switch (cfg_.feedback.kind) {
      case FeedbackMode::Kind::kExact:
        Feed(l, truth, VisibleModel{truth.alloc, truth.rewards}, counterfactual,
             true);
        break;
      case FeedbackMode::Kind::kNoisy:
        Feed(l, truth, VisibleModel{*noisy, truth.rewards}, counterfactual,
             false);
        break;
      case FeedbackMode::Kind::kBanditRegression:
        if (l.learner.kind() == EstimatorKind::kExp3) {
          Feed(l, truth, VisibleModel{truth.alloc, truth.rewards},
               counterfactual, false);
        } else {
          Feed(l, truth, RegressionView(l, t, truth, exact), counterfactual,
               false);
        }
        break;
    }
  }
  if (!market_) return;

  // Adaptive bidders: the market learner holds the learner seat; every
  // adversary sees the auction from its own seat with its own value.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t market_bid = market_->learner.SampleBid(market_->rng);
  const RoundFeedback market_truth =
      GspRoundFeedback(grid_, market_bid, exact, seat.click_threshold, value);
  const GraphContext none;
  UpdateLearner(market_->learner, market_truth,
                VisibleModel{market_truth.alloc, market_truth.rewards}, none);
  for (std::size_t j = 0; j < adversaries_.size(); ++j) {
    winexp::GspRound view = seat;
    view.learner_score = seat.others[j].score;
    view.others[j] = GspBidder{grid_[market_bid], seat.learner_score};
    const std::size_t own = grid_.NearestIndex(seat.others[j].bid);
    const double own_value = unit(env_);
    const RoundFeedback truth =
        GspRoundFeedback(grid_, own, view, own_value);
    UpdateLearner(adversaries_[j].learner, truth,
                  VisibleModel{truth.alloc, truth.rewards}, none);
  }
}

void ReplicationRunner::BatchRound(std::size_t t) {
  const winexp::GspRound seat = DrawSeat();
  const GspCurves exact = ComputeGspCurves(grid_, seat);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(
      cfg_.MinBatch(), cfg_.batch_size)(env_);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BatchContest> contests(count);
  for (std::size_t c = 0; c < count; ++c) {
    contests[c] = {unit(env_), values_[t * cfg_.batch_size + c]};
  }
  for (TrackedLearner& l : learners_) {
    const std::size_t bid = l.learner.SampleBid(l.rng);
    const BatchRoundResult result =
        BatchSponsoredRound(grid_, bid, exact, contests, cfg_.batch_size);
    try {
      if (l.learner.kind() == EstimatorKind::kExp3) {
        l.learner.Update(BanditFeedback{bid, result.realized_utility});
      } else {
        l.learner.Update(BatchRoundFeedback{result.alloc, result.batch, bid,
                                            cfg_.batch_size});
      }
    } catch (const InconsistentFeedback&) {
      ++l.trace.skipped_updates;
    }
    Record(l, result.counterfactual, result.realized_utility);
  }
}

void WriteNumber(std::ostream& out, double x) {
  out << std::setprecision(kCsvDigits) << x;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void Finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

Rng StreamRng(std::uint64_t seed, std::size_t replication,
              std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication),
                    static_cast<std::uint32_t>(
                        static_cast<std::uint64_t>(replication) >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ReplicationTrace RunReplication(const ScenarioConfig& cfg,
                                std::size_t replication) {
  return ReplicationRunner(cfg, replication).Run();
}

ScenarioResult RunScenario(const ScenarioConfig& cfg, RunOptions options) {
  cfg.Validate();
  const std::size_t reps = cfg.replications;
  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);

  std::vector<std::optional<ReplicationTrace>> traces(reps);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        traces[r] = RunReplication(cfg, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  for (std::size_t r = 0; r < reps; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const ConfigError& e) {
      throw ConfigError("replication " + std::to_string(r) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("replication " + std::to_string(r) + ": " +
                               e.what());
    }
  }
  ScenarioResult result{cfg, {}, {}};
  result.replications.reserve(reps);
  for (auto& t : traces) result.replications.push_back(std::move(*t));
  result.aggregate = Aggregate(result.replications);
  return result;
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

AggregateTrace Aggregate(std::span<const ReplicationTrace> replications) {
  if (replications.empty()) throw InvalidArgument("nothing to aggregate");
  const ReplicationTrace& first = replications.front();
  AggregateTrace out{first.scenario, {}};
  for (std::size_t i = 0; i < first.learners.size(); ++i) {
    const std::size_t horizon = first.learners[i].cumulative_regret.size();
    LearnerAggregate agg{first.learners[i].learner, {}, {}, {}};
    agg.mean.resize(horizon);
    agg.p10.resize(horizon);
    agg.p90.resize(horizon);
    std::vector<double> column(replications.size());
    for (std::size_t t = 0; t < horizon; ++t) {
      double total = 0.0;
      for (std::size_t r = 0; r < replications.size(); ++r) {
        const LearnerTrace& lt = replications[r].learners.at(i);
        if (lt.learner != agg.learner || lt.cumulative_regret.size() != horizon) {
          throw InvalidArgument("replications disagree on learners or horizon");
        }
        column[r] = lt.cumulative_regret[t];
        total += column[r];
      }
      agg.mean[t] = total / static_cast<double>(replications.size());
      agg.p10[t] = Percentile(column, 0.1);
      agg.p90[t] = Percentile(column, 0.9);
    }
    out.learners.push_back(std::move(agg));
  }
  return out;
}

RegretSummary SummarizeFinalRegret(const ScenarioResult& result,
                                   std::size_t learner_index) {
  const auto& reps = result.replications;
  const double n = static_cast<double>(reps.size());
  double mean = 0.0;
  for (const auto& r : reps) mean += r.learners.at(learner_index).FinalRegret();
  mean /= n;
  double var = 0.0;
  for (const auto& r : reps) {
    const double d = r.learners.at(learner_index).FinalRegret() - mean;
    var += d * d;
  }
  const double se = reps.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  return {mean, se};
}

std::vector<AuditRow> BoundAudit(const ScenarioResult& result) {
  std::vector<AuditRow> rows;
  const ScenarioConfig& cfg = result.config;
  if (result.replications.empty()) return rows;
  const auto& learners = result.replications.front().learners;
  for (std::size_t i = 0; i < learners.size(); ++i) {
    const LearnerTrace& lt = learners[i];
    const EstimatorKind kind = ParseEstimatorKind(lt.learner);
    const RegretSummary summary = SummarizeFinalRegret(result, i);
    std::optional<BoundKind> theorem;
    switch (kind) {
      case EstimatorKind::kWinOnly:
        theorem = BoundKind::kWinOnly;
        break;
      case EstimatorKind::kOutcome:
      case EstimatorKind::kBatch:
      case EstimatorKind::kBatchMean:
      case EstimatorKind::kBatchScaled:
        theorem = BoundKind::kOutcome;
        break;
      case EstimatorKind::kGraph:
        theorem = BoundKind::kGraph;
        break;
      case EstimatorKind::kExp3:
        break;
    }
    if (theorem) {
      BoundInputs in;
      in.horizon = cfg.horizon;
      in.grid_size = lt.grid_size;
      in.num_outcomes = lt.num_outcomes;
      if (kind == EstimatorKind::kGraph) {
        in.independence_number = lt.independence_number;
      }
      const double bound = RegretBound(*theorem, in);
      rows.push_back({cfg.name, lt.learner + ":theorem", summary.mean, bound,
                      summary.mean <= bound});
    }
    bool moments = true;
    double rhs = 0.0;
    for (const auto& rep : result.replications) {
      const LearnerTrace& r = rep.learners.at(i);
      moments = moments && r.moments_available;
      rhs += 0.5 * r.eta * r.moment_sum +
             std::log(static_cast<double>(r.grid_size)) / r.eta +
             2.0 * r.bias_allowance * static_cast<double>(cfg.horizon);
    }
    if (moments) {
      rhs /= static_cast<double>(result.replications.size());
      const double bound = rhs + 3.0 * summary.standard_error;
      rows.push_back({cfg.name, lt.learner + ":exp-weights", summary.mean,
                      bound, summary.mean <= bound});
    }
  }
  if (cfg.doubling) rows.push_back(DoublingAudit(cfg));
  return rows;
}

DoublingOutcome RunDoublingReplication(const ScenarioConfig& cfg,
                                       std::size_t replication,
                                       DoublingLimits limits) {
  cfg.Validate();
  if (cfg.environment != EnvironmentKind::kSecondPrice) {
    throw ConfigError("the doubling runner is defined for second price only");
  }
  Rng env = StreamRng(cfg.seed, replication, kEnvironmentStream);
  Rng value_rng = StreamRng(cfg.seed, replication, kValueStream);
  Rng learner_rng = StreamRng(cfg.seed, replication, kLearnerStreamBase);
  const ValueProcess values = ValueProcess::Generate(cfg.value, cfg.horizon, value_rng);

  DoublingSchedule schedule(limits);
  std::optional<BidGrid> grid;
  std::optional<Learner> learner;
  std::set<double> points{0.0, 1.0};
  double gap = 1.0;
  std::vector<SingleItemRecord> trace;
  trace.reserve(cfg.horizon);
  double realized = 0.0;
  std::vector<double> others(cfg.bidders - 1);
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    const bool restart = schedule.Advance(t, cfg.lipschitz, gap);
    if (!learner || restart) {
      grid.emplace(MakeGrid(schedule.StageResolution()));
      learner.emplace(*grid, EstimatorKind::kOutcome, schedule.StageStepSize(2),
                      static_cast<std::size_t>(schedule.horizon_bound()));
    }
    for (double& b : others) {
      b = Quantize(cfg.adversary_bid.Sample(env), cfg.bid_quantum);
    }
    const double value = values[t - 1];
    const std::size_t bid = learner->SampleBid(learner_rng);
    const RoundFeedback truth = SecondPriceRound(*grid, bid, others, value);
    UpdateLearner(*learner, truth, VisibleModel{truth.alloc, truth.rewards}, {});
    realized += truth.realized_utility;
    const double highest = *std::max_element(others.begin(), others.end());
    trace.push_back({highest, value});
    const auto [it, inserted] = points.insert(highest);
    if (inserted) {
      if (it != points.begin()) gap = std::min(gap, *it - *std::prev(it));
      if (std::next(it) != points.end()) gap = std::min(gap, *std::next(it) - *it);
    }
  }
  DoublingOutcome out;
  out.regret = ContinuousSecondPriceOptimum(trace) - realized;
  out.piece_width = gap;
  BoundInputs in;
  in.horizon = cfg.horizon;
  in.num_outcomes = 2;
  in.lipschitz = cfg.lipschitz;
  in.piece_width = gap;
  out.bound = RegretBound(BoundKind::kDoubling, in);
  out.restarts = schedule.restarts();
  out.horizon_restarts = schedule.horizon_restarts();
  out.log_restarts = schedule.log_restarts();
  return out;
}

AuditRow DoublingAudit(const ScenarioConfig& cfg, DoublingLimits limits) {
  double regret = 0.0, bound = 0.0;
  for (std::size_t r = 0; r < cfg.replications; ++r) {
    const DoublingOutcome o = RunDoublingReplication(cfg, r, limits);
    regret += o.regret;
    bound += o.bound;
  }
  const double n = static_cast<double>(cfg.replications);
  regret /= n;
  bound /= n;
  return {cfg.name, "doubling:theorem", regret, bound, regret <= bound};
}

void WriteTracesCsv(std::span<const ScenarioResult> results,
                    const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "scenario,learner,replication,t,cum_regret\n";
  for (const ScenarioResult& result : results) {
    for (const ReplicationTrace& rep : result.replications) {
      for (const LearnerTrace& lt : rep.learners) {
        for (std::size_t t = 0; t < lt.cumulative_regret.size(); ++t) {
          out << rep.scenario << ',' << lt.learner << ',' << rep.replication
              << ',' << t + 1 << ',';
          WriteNumber(out, lt.cumulative_regret[t]);
          out << '\n';
        }
      }
    }
  }
  Finish(out, path);
}

void WriteAggregateCsv(std::span<const ScenarioResult> results,
                       const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "scenario,learner,t,mean,p10,p90\n";
  for (const ScenarioResult& result : results) {
    const AggregateTrace& agg = result.aggregate;
    for (const LearnerAggregate& la : agg.learners) {
      for (std::size_t t = 0; t < la.mean.size(); ++t) {
        out << agg.scenario << ',' << la.learner << ',' << t + 1 << ',';
        WriteNumber(out, la.mean[t]);
        out << ',';
        WriteNumber(out, la.p10[t]);
        out << ',';
        WriteNumber(out, la.p90[t]);
        out << '\n';
      }
    }
  }
  Finish(out, path);
}

void WriteAuditCsv(std::span<const AuditRow> rows, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << "scenario,learner,empirical,bound,pass\n";
  for (const AuditRow& row : rows) {
    out << row.scenario << ',' << row.learner << ',';
    WriteNumber(out, row.empirical);
    out << ',';
    WriteNumber(out, row.bound);
    out << ',' << (row.pass ? "true" : "false") << '\n';
  }
  Finish(out, path);
}

}  // namespace winexp
