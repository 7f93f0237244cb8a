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

#include "winexp/scenario.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "winexp/errors.h"
#include "winexp/feedback_graph.h"
#include "winexp/value_process.h"

namespace winexp {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T ParseNumeric(std::string_view text, std::string_view key) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bad value '" + std::string(text) + "' for " +
                      std::string(key));
  }
  return value;
}

bool ParseBool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("bad boolean '" + std::string(text) + "' for " +
                    std::string(key));
}

std::vector<EstimatorKind> ParseLearners(std::string_view text) {
  std::vector<EstimatorKind> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = Trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(ParseEstimatorKind(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"name", [](auto& c, auto v) { c.name = std::string(v); }},
      {"environment",
       [](auto& c, auto v) { c.environment = ParseEnvironmentKind(v); }},
      {"bidders",
       [](auto& c, auto v) { c.bidders = ParseNumeric<std::size_t>(v, "bidders"); }},
      {"slots",
       [](auto& c, auto v) { c.slots = ParseNumeric<std::size_t>(v, "slots"); }},
      {"adversary",
       [](auto& c, auto v) { c.adversary = ParseAdversaryMode(v); }},
      {"adaptive_count",
       [](auto& c, auto v) {
         c.adaptive_count = ParseNumeric<std::size_t>(v, "adaptive_count");
       }},
      {"ctr", [](auto& c, auto v) { c.ctr = DistributionSpec::Parse(v); }},
      {"ctr_mode",
       [](auto& c, auto v) {
         if (v == "resample") {
           c.ctr_mode = CtrMode::kResample;
         } else if (v == "fixed") {
           c.ctr_mode = CtrMode::kFixed;
         } else {
           throw ConfigError("ctr_mode must be resample or fixed");
         }
       }},
      {"score", [](auto& c, auto v) { c.score = DistributionSpec::Parse(v); }},
      {"adversary_bid",
       [](auto& c, auto v) { c.adversary_bid = DistributionSpec::Parse(v); }},
      {"value", [](auto& c, auto v) { c.value = std::string(v); }},
      {"feedback",
       [](auto& c, auto v) { c.feedback = FeedbackMode::Parse(v); }},
      {"epsilon",
       [](auto& c, auto v) { c.epsilon = ParseNumeric<double>(v, "epsilon"); }},
      {"horizon",
       [](auto& c, auto v) { c.horizon = ParseNumeric<std::size_t>(v, "horizon"); }},
      {"replications",
       [](auto& c, auto v) {
         c.replications = ParseNumeric<std::size_t>(v, "replications");
       }},
      {"seed",
       [](auto& c, auto v) { c.seed = ParseNumeric<std::uint64_t>(v, "seed"); }},
      {"learners", [](auto& c, auto v) { c.learners = ParseLearners(v); }},
      {"market_learner",
       [](auto& c, auto v) { c.market_learner = ParseEstimatorKind(v); }},
      {"reserve",
       [](auto& c, auto v) { c.reserve = ParseNumeric<double>(v, "reserve"); }},
      {"batch_size",
       [](auto& c, auto v) {
         c.batch_size = ParseNumeric<std::size_t>(v, "batch_size");
       }},
      {"batch_min",
       [](auto& c, auto v) {
         c.batch_min = ParseNumeric<std::size_t>(v, "batch_min");
       }},
      {"items",
       [](auto& c, auto v) { c.items = ParseNumeric<std::size_t>(v, "items"); }},
      {"graph", [](auto& c, auto v) { c.graph = std::string(v); }},
      {"bid_quantum",
       [](auto& c, auto v) {
         c.bid_quantum = ParseNumeric<double>(v, "bid_quantum");
       }},
      {"lipschitz",
       [](auto& c, auto v) { c.lipschitz = ParseNumeric<double>(v, "lipschitz"); }},
      {"doubling",
       [](auto& c, auto v) { c.doubling = ParseBool(v, "doubling"); }},
  };
  return *setters;
}

bool IsSingleItem(EnvironmentKind env) {
  return env == EnvironmentKind::kSecondPrice ||
         env == EnvironmentKind::kFirstPrice || env == EnvironmentKind::kAllPay;
}

void CheckLearner(const ScenarioConfig& c, EstimatorKind kind) {
  const auto fail = [&](const char* why) {
    throw ConfigError("learner '" + std::string(ToString(kind)) +
                      "' cannot run in environment '" +
                      std::string(ToString(c.environment)) + "': " + why);
  };
  const bool batch_kind = kind == EstimatorKind::kBatch ||
                          kind == EstimatorKind::kBatchMean ||
                          kind == EstimatorKind::kBatchScaled;
  if (batch_kind != (c.environment == EnvironmentKind::kGspBatch) &&
      kind != EstimatorKind::kExp3) {
    fail("batch estimators need gsp-batch and gsp-batch needs them");
  }
  if (kind == EstimatorKind::kWinOnly &&
      (c.environment == EnvironmentKind::kAllPay ||
       c.environment == EnvironmentKind::kUnitDemand)) {
    fail("win-only needs two outcomes with a zero losing reward");
  }
  if (kind == EstimatorKind::kGraph &&
      c.environment != EnvironmentKind::kUnitDemand) {
    fail("feedback graphs are defined over unit-demand outcomes");
  }
}

ScenarioConfig GspBase(std::string name, std::string_view ctr) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.ctr = DistributionSpec::Parse(ctr);
  return c;
}

using Factory = std::function<std::vector<ScenarioConfig>()>;

struct PresetEntry {
  std::string description;
  Factory make;
};

std::vector<std::pair<std::string, PresetEntry>> BuildPresets() {
  std::vector<std::pair<std::string, PresetEntry>> out;
  const std::vector<std::pair<std::string, std::string>> ctrs = {
      {"ctr01", "uniform(0.1,1)"},
      {"ctr03", "uniform(0.3,1)"},
      {"ctr05", "uniform(0.5,1)"}};
  const std::vector<std::tuple<std::string, AdversaryMode, std::string>>
      families = {{"fig2", AdversaryMode::kStochastic, "stochastic"},
                  {"fig3", AdversaryMode::kAdaptiveExp3, "adaptive EXP3"},
                  {"fig4", AdversaryMode::kAdaptiveWinExp, "adaptive WIN-EXP"}};
  for (const auto& [fig, mode, who] : families) {
    for (const auto& [suffix, ctr] : ctrs) {
      const std::string name = fig + "-" + suffix;
      const AdversaryMode m = mode;
      const std::string spec = ctr;
      out.push_back({name,
                     {"GSP, " + who + " adversaries, CTR " + ctr,
                      [name, m, spec] {
                        ScenarioConfig c = GspBase(name, spec);
                        c.adversary = m;
                        return std::vector<ScenarioConfig>{c};
                      }}});
    }
  }
  const std::vector<std::pair<std::string, AdversaryMode>> noise_modes = {
      {"", AdversaryMode::kStochastic},
      {"-adaptive-exp3", AdversaryMode::kAdaptiveExp3},
      {"-adaptive-winexp", AdversaryMode::kAdaptiveWinExp}};
  for (const char* m : {"100", "1000", "10000"}) {
    for (const auto& [suffix, mode] : noise_modes) {
      const std::string name = std::string("noise-m") + m + suffix;
      const std::string tag = std::string("noisy(") + m + ")";
      const AdversaryMode adv = mode;
      out.push_back({name,
                     {"GSP with N(0,1/" + std::string(m) + ") CTR noise, " +
                          std::string(ToString(adv)) + " adversaries",
                      [name, tag, adv] {
                        ScenarioConfig c = GspBase(name, "uniform(0.5,1)");
                        c.adversary = adv;
                        c.feedback = FeedbackMode::Parse(tag);
                        return std::vector<ScenarioConfig>{c};
                      }}});
    }
  }
  out.push_back({"bandit-regression-uniform",
                 {"GSP, fully bandit feedback with fitted curves, CTR "
                  "uniform(0.5,1)",
                  [] {
                    ScenarioConfig c = GspBase("bandit-regression-uniform",
                                               "uniform(0.5,1)");
                    c.feedback = FeedbackMode::Parse("bandit-regression(0.99)");
                    return std::vector<ScenarioConfig>{c};
                  }}});
  out.push_back({"bandit-regression-normal",
                 {"GSP, fully bandit feedback, CTR and scores normal(0.5,0.16)",
                  [] {
                    ScenarioConfig c = GspBase("bandit-regression-normal",
                                               "normal(0.5,0.16)");
                    c.score = DistributionSpec::Normal(0.5, 0.16);
                    c.feedback = FeedbackMode::Parse("bandit-regression(0.99)");
                    return std::vector<ScenarioConfig>{c};
                  }}});
  out.push_back({"discretization-sweep",
                 {"GSP, stochastic adversaries, epsilon in {0.1, 0.02, 0.01}",
                  [] {
                    std::vector<ScenarioConfig> v;
                    for (const auto& [tag, eps] :
                         std::vector<std::pair<std::string, double>>{
                             {"0.1", 0.1}, {"0.02", 0.02}, {"0.01", 0.01}}) {
                      ScenarioConfig c = GspBase(
                          "discretization-sweep-eps" + tag, "uniform(0.5,1)");
                      c.epsilon = eps;
                      v.push_back(c);
                    }
                    return v;
                  }}});
  out.push_back({"second-price-audit",
                 {"second price against one uniform bidder, 101 bids, T=5000",
                  [] {
                    ScenarioConfig c;
                    c.name = "second-price-audit";
                    c.environment = EnvironmentKind::kSecondPrice;
                    c.bidders = 2;
                    c.slots = 1;
                    c.horizon = 5000;
                    c.replications = 20;
                    c.learners = {EstimatorKind::kWinOnly};
                    return std::vector<ScenarioConfig>{c};
                  }}});
  out.push_back({"graph-unit-demand",
                 {"unit demand over 4 items with a chain feedback graph",
                  [] {
                    ScenarioConfig c;
                    c.name = "graph-unit-demand";
                    c.environment = EnvironmentKind::kUnitDemand;
                    c.bidders = 1;
                    c.slots = 1;
                    c.items = 4;
                    c.graph = "o0:o1; o1:o2; o2:o3; o3:o4";
                    c.horizon = 5000;
                    c.replications = 20;
                    c.learners = {EstimatorKind::kGraph};
                    return std::vector<ScenarioConfig>{c};
                  }}});
  out.push_back({"doubling-second-price",
                 {"second price with restarts for unknown T and piece width",
                  [] {
                    ScenarioConfig c;
                    c.name = "doubling-second-price";
                    c.environment = EnvironmentKind::kSecondPrice;
                    c.bidders = 2;
                    c.slots = 1;
                    c.horizon = 5000;
                    c.replications = 20;
                    c.bid_quantum = 0.05;
                    c.doubling = true;
                    c.learners = {EstimatorKind::kOutcome};
                    return std::vector<ScenarioConfig>{c};
                  }}});
  return out;
}

const std::vector<std::pair<std::string, PresetEntry>>& Presets() {
  static const auto* presets =
      new std::vector<std::pair<std::string, PresetEntry>>(BuildPresets());
  return *presets;
}

}  // namespace

std::string_view ToString(AdversaryMode mode) {
  switch (mode) {
    case AdversaryMode::kStochastic:
      return "stochastic";
    case AdversaryMode::kAdaptiveExp3:
      return "adaptive-exp3";
    case AdversaryMode::kAdaptiveWinExp:
      return "adaptive-winexp";
  }
  return "unknown";
}

AdversaryMode ParseAdversaryMode(std::string_view tag) {
  if (tag == "stochastic") return AdversaryMode::kStochastic;
  if (tag == "adaptive-exp3") return AdversaryMode::kAdaptiveExp3;
  if (tag == "adaptive-winexp") return AdversaryMode::kAdaptiveWinExp;
  throw ConfigError("unknown adversary mode '" + std::string(tag) + "'");
}

std::size_t ScenarioConfig::NumOutcomes() const {
  return environment == EnvironmentKind::kUnitDemand ? items + 1 : 2;
}

void ScenarioConfig::Validate() const {
  if (name.empty() || name.find(',') != std::string::npos) {
    throw ConfigError("scenario name must be non-empty and free of commas");
  }
  if (horizon == 0) throw ConfigError("horizon must be >= 1");
  if (replications == 0) throw ConfigError("replications must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1]");
  }
  if (learners.empty()) throw ConfigError("at least one learner is required");
  for (std::size_t i = 0; i < learners.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (learners[i] == learners[j]) {
        throw ConfigError("learner '" + std::string(ToString(learners[i])) +
                          "' listed twice");
      }
    }
    CheckLearner(*this, learners[i]);
  }
  ValidateValueTag(value);
  if (!(reserve >= 0.0 && reserve <= 1.0)) {
    throw ConfigError("reserve must lie in [0, 1]");
  }
  if (!(bid_quantum >= 0.0 && bid_quantum <= 1.0)) {
    throw ConfigError("bid_quantum must lie in [0, 1]");
  }
  if (!(lipschitz >= 0.0)) throw ConfigError("lipschitz must be >= 0");
  const bool gsp = environment == EnvironmentKind::kGsp ||
                   environment == EnvironmentKind::kGspBatch;
  if (gsp) {
    if (slots == 0 || bidders < slots) {
      throw ConfigError("GSP needs bidders >= slots >= 1");
    }
    if (market_learner != EstimatorKind::kWinOnly &&
        market_learner != EstimatorKind::kExp3) {
      throw ConfigError("market learner must be win-only or exp3");
    }
    if (adversary != AdversaryMode::kStochastic &&
        (adaptive_count == 0 || adaptive_count > bidders - 1)) {
      throw ConfigError("adaptive_count must lie in [1, bidders - 1]");
    }
  } else {
    if (adversary != AdversaryMode::kStochastic) {
      throw ConfigError("adaptive adversaries are only simulated in GSP");
    }
    if (feedback.kind != FeedbackMode::Kind::kExact) {
      throw ConfigError("noisy and regression feedback are only defined for GSP");
    }
  }
  if (IsSingleItem(environment) && bidders < 2) {
    throw ConfigError("single-item auctions need at least two bidders");
  }
  if (environment == EnvironmentKind::kGspBatch) {
    if (batch_size == 0 || MinBatch() > batch_size) {
      throw ConfigError("batch sizes need 1 <= batch_min <= batch_size");
    }
    if (feedback.kind != FeedbackMode::Kind::kExact) {
      throw ConfigError("gsp-batch supports exact feedback only");
    }
    if (adversary != AdversaryMode::kStochastic) {
      throw ConfigError("gsp-batch supports stochastic adversaries only");
    }
  }
  if (environment == EnvironmentKind::kUnitDemand) {
    if (items == 0 || items + 1 > kMaxExactIndependenceNodes) {
      throw ConfigError("items must lie in [1, 23]");
    }
    try {
      ParseGraphLiteral(OutcomeSet::Indexed(items + 1), graph);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("bad graph: ") + e.what());
    }
  }
  if (doubling && environment != EnvironmentKind::kSecondPrice) {
    throw ConfigError("the doubling runner is defined for second price only");
  }
}

ScenarioConfig ParseScenario(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    const auto it = Setters().find(key);
    if (it == Setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.Validate();
  return cfg;
}

ScenarioConfig LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseScenario(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string FormatScenario(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "name = " << c.name << "\n"
      << "environment = " << ToString(c.environment) << "\n"
      << "bidders = " << c.bidders << "\n"
      << "slots = " << c.slots << "\n"
      << "adversary = " << ToString(c.adversary) << "\n"
      << "adaptive_count = " << c.adaptive_count << "\n"
      << "ctr = " << c.ctr.ToString() << "\n"
      << "ctr_mode = " << (c.ctr_mode == CtrMode::kFixed ? "fixed" : "resample")
      << "\n"
      << "score = " << c.score.ToString() << "\n"
      << "adversary_bid = " << c.adversary_bid.ToString() << "\n"
      << "value = " << c.value << "\n"
      << "feedback = " << c.feedback.ToString() << "\n"
      << "epsilon = " << c.epsilon << "\n"
      << "horizon = " << c.horizon << "\n"
      << "replications = " << c.replications << "\n"
      << "seed = " << c.seed << "\n"
      << "learners = ";
  for (std::size_t i = 0; i < c.learners.size(); ++i) {
    out << (i ? "," : "") << ToString(c.learners[i]);
  }
  out << "\n"
      << "market_learner = " << ToString(c.market_learner) << "\n"
      << "reserve = " << c.reserve << "\n"
      << "batch_size = " << c.batch_size << "\n"
      << "batch_min = " << c.batch_min << "\n"
      << "items = " << c.items << "\n";
  if (!c.graph.empty()) out << "graph = " << c.graph << "\n";
  out << "bid_quantum = " << c.bid_quantum << "\n"
      << "lipschitz = " << c.lipschitz << "\n"
      << "doubling = " << (c.doubling ? "true" : "false") << "\n";
  return out.str();
}

std::vector<PresetInfo> PresetCatalog() {
  std::vector<PresetInfo> out;
  for (const auto& [name, entry] : Presets()) {
    out.push_back({name, entry.description});
  }
  return out;
}

bool IsPreset(std::string_view name) {
  for (const auto& [n, entry] : Presets()) {
    if (n == name) return true;
  }
  return false;
}

std::vector<ScenarioConfig> Preset(std::string_view name) {
  for (const auto& [n, entry] : Presets()) {
    if (n == name) {
      std::vector<ScenarioConfig> configs = entry.make();
      for (const ScenarioConfig& c : configs) c.Validate();
      return configs;
    }
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace winexp
