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

#ifndef WINEXP_HARNESS_H_
#define WINEXP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "winexp/bid_distribution.h"
#include "winexp/learner.h"
#include "winexp/scenario.h"

namespace winexp {

// Cumulative ex-post regret of one tracked learner in one replication, plus
// the logged quantities the exponential-weights audit needs.
struct LearnerTrace {
  std::string learner;
  std::vector<double> cumulative_regret;  // index t - 1
  double eta = 0.0;
  std::size_t grid_size = 0;
  std::size_t num_outcomes = 0;
  std::size_t independence_number = 0;  // graph learners only
  // sum_t sum_b pi_t(b) E[u~_t(b)^2]; meaningful when moments_available.
  double moment_sum = 0.0;
  bool moments_available = false;
  // kappa: 0 for unbiased estimators, 2 eps |O| for the graph estimator.
  double bias_allowance = 0.0;
  // Rounds whose feedback had zero probability under the learner's own model
  // (possible with perturbed curves) and carried no update.
  std::size_t skipped_updates = 0;

  double FinalRegret() const { return cumulative_regret.back(); }
};

struct ReplicationTrace {
  std::string scenario;
  std::size_t replication = 0;
  std::vector<LearnerTrace> learners;
};

struct LearnerAggregate {
  std::string learner;
  std::vector<double> mean;
  std::vector<double> p10;
  std::vector<double> p90;
};

struct AggregateTrace {
  std::string scenario;
  std::vector<LearnerAggregate> learners;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<ReplicationTrace> replications;
  AggregateTrace aggregate;
};

// Independent random stream for (base seed, replication, stream id).
Rng StreamRng(std::uint64_t seed, std::size_t replication, std::uint64_t stream);

// Runs T rounds. Every tracked learner faces the same realized environment.
// Throws ConfigError before the first round on an invalid configuration.
ReplicationTrace RunReplication(const ScenarioConfig& cfg,
                                std::size_t replication);

struct RunOptions {
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Runs cfg.replications replications concurrently and aggregates them.
// Replication errors are rethrown with the replication index attached.
ScenarioResult RunScenario(const ScenarioConfig& cfg, RunOptions options = {});

// Linear interpolation between order statistics.
double Percentile(std::vector<double> values, double q);

// Per-round mean, 10th and 90th percentile across replications.
AggregateTrace Aggregate(std::span<const ReplicationTrace> replications);

struct AuditRow {
  std::string scenario;
  std::string learner;
  double empirical = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct RegretSummary {
  double mean = 0.0;
  double standard_error = 0.0;
};
RegretSummary SummarizeFinalRegret(const ScenarioResult& result,
                                   std::size_t learner_index);

// Mean final regret against the closed-form theorem bound ("<kind>:theorem")
// and against the exponential-weights right-hand side from the logs plus
// three standard errors ("<kind>:exp-weights").
std::vector<AuditRow> BoundAudit(const ScenarioResult& result);

// Second price with restarts: the grid resolution and step size follow the
// doubling schedule driven by the rounds played and the smallest observed
// gap between highest other bids. Regret is against the best bid in [0, 1].
struct DoublingOutcome {
  double regret = 0.0;
  double bound = 0.0;  // 25 sqrt(2 T |O| log max{L T, 1/gap}) + 1
  double piece_width = 1.0;
  std::size_t restarts = 0;
  std::size_t horizon_restarts = 0;
  std::size_t log_restarts = 0;
};
DoublingOutcome RunDoublingReplication(const ScenarioConfig& cfg,
                                       std::size_t replication,
                                       DoublingLimits limits = {});
// One row "doubling:theorem" over cfg.replications runs.
AuditRow DoublingAudit(const ScenarioConfig& cfg, DoublingLimits limits = {});

// scenario,learner,replication,t,cum_regret
void WriteTracesCsv(std::span<const ScenarioResult> results,
                    const std::string& path);
// scenario,learner,t,mean,p10,p90
void WriteAggregateCsv(std::span<const ScenarioResult> results,
                       const std::string& path);
// scenario,learner,empirical,bound,pass
void WriteAuditCsv(std::span<const AuditRow> rows, const std::string& path);

}  // namespace winexp

#endif  // WINEXP_HARNESS_H_
