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

#ifndef WINEXP_SCENARIO_H_
#define WINEXP_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "winexp/auctions.h"
#include "winexp/curve_feedback.h"
#include "winexp/distribution_spec.h"
#include "winexp/learner.h"

namespace winexp {

// "stochastic", "adaptive-exp3", "adaptive-winexp".
enum class AdversaryMode { kStochastic, kAdaptiveExp3, kAdaptiveWinExp };
std::string_view ToString(AdversaryMode mode);
AdversaryMode ParseAdversaryMode(std::string_view tag);

// "resample" draws fresh slot CTRs every round, "fixed" once per run.
enum class CtrMode { kResample, kFixed };

// Experiment description. Scenario files hold one "key = value" pair per
// line; '#' starts a comment. Keys are the member names below.
struct ScenarioConfig {
  std::string name = "scenario";
  EnvironmentKind environment = EnvironmentKind::kGsp;
  std::size_t bidders = 20;
  std::size_t slots = 3;
  AdversaryMode adversary = AdversaryMode::kStochastic;
  std::size_t adaptive_count = 4;
  DistributionSpec ctr = DistributionSpec::Uniform(0.5, 1.0);
  CtrMode ctr_mode = CtrMode::kResample;
  DistributionSpec score = DistributionSpec::Uniform(0.0, 1.0);
  DistributionSpec adversary_bid = DistributionSpec::Uniform(0.0, 1.0);
  std::string value = "iid-uniform";
  FeedbackMode feedback;
  double epsilon = 0.01;
  std::size_t horizon = 2000;
  std::size_t replications = 30;
  std::uint64_t seed = 1;
  std::vector<EstimatorKind> learners = {EstimatorKind::kWinOnly,
                                         EstimatorKind::kExp3};
  EstimatorKind market_learner = EstimatorKind::kWinOnly;
  double reserve = 0.0;
  std::size_t batch_size = 1;
  std::size_t batch_min = 0;  // 0 means batch_size
  std::size_t items = 4;
  std::string graph;  // literal over labels o0..o<items>
  double bid_quantum = 0.0;
  double lipschitz = 0.0;
  bool doubling = false;

  // Throws ConfigError on any inconsistency.
  void Validate() const;
  // |O| of the learner's outcome model.
  std::size_t NumOutcomes() const;
  std::size_t MinBatch() const { return batch_min == 0 ? batch_size : batch_min; }
};

// Throws ConfigError naming the line on unknown keys or bad values. The
// result is validated.
ScenarioConfig ParseScenario(std::string_view text);
// Throws IoError naming the path when the file cannot be read.
ScenarioConfig LoadScenario(const std::string& path);
// Inverse of ParseScenario.
std::string FormatScenario(const ScenarioConfig& cfg);

struct PresetInfo {
  std::string name;
  std::string description;
};
std::vector<PresetInfo> PresetCatalog();
bool IsPreset(std::string_view name);
// A preset name may denote a family of scenarios (discretization-sweep).
// Throws ConfigError on unknown names.
std::vector<ScenarioConfig> Preset(std::string_view name);

}  // namespace winexp

#endif  // WINEXP_SCENARIO_H_
