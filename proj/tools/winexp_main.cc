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

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "winexp/discretization.h"
#include "winexp/errors.h"
#include "winexp/harness.h"
#include "winexp/scenario.h"

namespace {

constexpr const char* kOutDirVariable = "WINEXP_OUT_DIR";

struct RunArgs {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
};

std::vector<winexp::ScenarioConfig> ResolveScenarios(const RunArgs& args) {
  std::vector<winexp::ScenarioConfig> configs;
  if (winexp::IsPreset(args.scenario)) {
    configs = winexp::Preset(args.scenario);
  } else {
    configs.push_back(winexp::LoadScenario(args.scenario));
  }
  for (winexp::ScenarioConfig& cfg : configs) {
    if (args.seed) cfg.seed = *args.seed;
    if (args.reps) cfg.replications = *args.reps;
    cfg.Validate();
  }
  return configs;
}

std::filesystem::path PrepareOutDir(const std::string& dir) {
  const std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw winexp::IoError("cannot create output directory '" + dir +
                          "': " + ec.message());
  }
  return path;
}

int Run(const RunArgs& args, bool audit) {
  const std::vector<winexp::ScenarioConfig> configs = ResolveScenarios(args);
  const std::filesystem::path out = PrepareOutDir(args.out_dir);
  std::vector<winexp::ScenarioResult> results;
  std::vector<winexp::AuditRow> rows;
  for (const winexp::ScenarioConfig& cfg : configs) {
    std::cerr << "running " << cfg.name << " (T=" << cfg.horizon
              << ", R=" << cfg.replications << ")\n";
    results.push_back(winexp::RunScenario(cfg));
    if (audit) {
      for (winexp::AuditRow& row : winexp::BoundAudit(results.back())) {
        rows.push_back(std::move(row));
      }
    }
  }
  winexp::WriteTracesCsv(results, (out / "traces.csv").string());
  winexp::WriteAggregateCsv(results, (out / "aggregate.csv").string());
  if (audit) {
    winexp::WriteAuditCsv(rows, (out / "audit.csv").string());
    for (const winexp::AuditRow& row : rows) {
      std::cout << row.scenario << ' ' << row.learner << ": empirical "
                << row.empirical << " bound " << row.bound << ' '
                << (row.pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return 0;
}

struct GridArgs {
  std::optional<double> epsilon;
  double lipschitz = 0.0;
  std::size_t horizon = 1000;
  double delta = 1.0;
  std::size_t outcomes = 2;
};

int GridInfo(const GridArgs& args) {
  winexp::DiscretizationConfig dc{args.lipschitz, args.delta, args.horizon};
  const double epsilon = args.epsilon ? *args.epsilon : winexp::ChooseEpsilon(dc);
  const winexp::BidGrid grid = winexp::MakeGrid(epsilon);
  winexp::BoundInputs in;
  in.horizon = args.horizon;
  in.grid_size = grid.size();
  in.num_outcomes = args.outcomes;
  in.lipschitz = args.lipschitz;
  in.piece_width = args.delta;
  std::cout << std::setprecision(9) << "epsilon: " << epsilon << '\n'
            << "grid points: " << grid.size() << '\n'
            << "win-only bound: "
            << winexp::RegretBound(winexp::BoundKind::kWinOnly, in) << '\n'
            << "outcome bound: "
            << winexp::RegretBound(winexp::BoundKind::kOutcome, in) << '\n'
            << "continuous bound: "
            << winexp::RegretBound(winexp::BoundKind::kContinuous, in) << '\n'
            << "doubling bound: "
            << winexp::RegretBound(winexp::BoundKind::kDoubling, in) << '\n';
  if (epsilon < args.delta) {
    std::cout << "discretization error: "
              << winexp::DiscretizationErrorBound(epsilon, dc) << '\n';
  }
  return 0;
}

int ScenariosList() {
  for (const winexp::PresetInfo& p : winexp::PresetCatalog()) {
    std::cout << std::left << std::setw(34) << p.name << p.description << '\n';
  }
  return 0;
}

void AddRunOptions(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--scenario", args.scenario, "Scenario file or preset name")
      ->required();
  const char* env_out = std::getenv(kOutDirVariable);
  auto* out = cmd->add_option("--out", args.out_dir, "Output directory");
  if (env_out != nullptr && *env_out != '\0') {
    args.out_dir = env_out;
  } else {
    out->required();
  }
  cmd->add_option("--seed", args.seed, "Base seed override");
  cmd->add_option("--reps", args.reps, "Replication count override")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regret experiments for auction learners with win-only and "
               "outcome feedback"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write traces");
  AddRunOptions(run, run_args);

  RunArgs audit_args;
  CLI::App* audit =
      app.add_subcommand("audit", "Run a scenario and audit regret bounds");
  AddRunOptions(audit, audit_args);

  GridArgs grid_args;
  CLI::App* grid = app.add_subcommand("grid-info", "Print grid size and bounds");
  grid->add_option("--epsilon", grid_args.epsilon, "Grid resolution")
      ->check(CLI::PositiveNumber);
  grid->add_option("--L", grid_args.lipschitz, "Lipschitz constant")
      ->check(CLI::NonNegativeNumber);
  grid->add_option("--T", grid_args.horizon, "Horizon")->check(CLI::PositiveNumber);
  grid->add_option("--delta", grid_args.delta, "Minimum piece width")
      ->check(CLI::PositiveNumber);
  grid->add_option("--outcomes", grid_args.outcomes, "Outcome count")
      ->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("scenarios-list", "List built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return Run(run_args, false);
    if (audit->parsed()) return Run(audit_args, true);
    if (grid->parsed()) return GridInfo(grid_args);
    if (list->parsed()) return ScenariosList();
  } catch (const std::exception& e) {
    std::cerr << "winexp: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
