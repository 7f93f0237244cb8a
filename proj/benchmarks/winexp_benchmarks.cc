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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "winexp/auctions.h"
#include "winexp/discretization.h"
#include "winexp/estimators.h"
#include "winexp/harness.h"
#include "winexp/learner.h"

namespace winexp {
namespace {

BidGrid GridOf(int points) { return MakeGrid(1.0 / (points - 1)); }

std::vector<double> Uniform(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = unit(rng);
  return out;
}

void BM_WinOnlyEstimate(benchmark::State& state) {
  Rng rng(1);
  const BidGrid grid = GridOf(static_cast<int>(state.range(0)));
  const auto dist = BidDistribution::Uniform(grid.size());
  const auto x = Uniform(grid.size(), rng);
  const auto r = Uniform(grid.size(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(WinOnlyEstimate(dist, x, true, r));
  }
}
BENCHMARK(BM_WinOnlyEstimate)->Arg(101)->Arg(1001);

void BM_OutcomeEstimate(benchmark::State& state) {
  Rng rng(2);
  const BidGrid grid = GridOf(static_cast<int>(state.range(0)));
  const std::size_t outcomes = 5;
  BidOutcomeTable t(grid.size(), outcomes);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    for (std::size_t o = 0; o < outcomes; ++o) t(b, o) = 1.0 / outcomes;
  }
  const AllocationCurve alloc(t);
  const auto dist = BidDistribution::Uniform(grid.size());
  const auto row = Uniform(grid.size(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(OutcomeEstimate(dist, alloc, 2, row));
  }
}
BENCHMARK(BM_OutcomeEstimate)->Arg(101)->Arg(1001);

void BM_LearnerUpdate(benchmark::State& state) {
  Rng rng(3);
  const BidGrid grid = GridOf(static_cast<int>(state.range(0)));
  const std::size_t horizon = 1 << 30;
  Learner learner(grid, EstimatorKind::kWinOnly,
                  StepSize(EstimatorKind::kWinOnly, 2000, grid.size(), 2), horizon);
  const auto x = Uniform(grid.size(), rng);
  const auto r = Uniform(grid.size(), rng);
  bool won = false;
  for (auto _ : state) {
    won = !won;
    benchmark::DoNotOptimize(learner.Update(WinOnlyFeedback{x, won, r}));
  }
}
BENCHMARK(BM_LearnerUpdate)->Arg(101)->Arg(1001);

void BM_GspCurves(benchmark::State& state) {
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BidGrid grid = GridOf(101);
  GspRound round;
  round.learner_score = unit(rng);
  for (int j = 0; j < state.range(0) - 1; ++j) round.others.push_back({unit(rng), unit(rng)});
  round.slot_ctrs = {0.9, 0.6, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeGspCurves(grid, round));
  }
}
BENCHMARK(BM_GspCurves)->Arg(20)->Arg(200);

void BM_GspReplication(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.horizon = static_cast<std::size_t>(state.range(0));
  cfg.replications = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunReplication(cfg, 0));
  }
}
BENCHMARK(BM_GspReplication)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace winexp

BENCHMARK_MAIN();
