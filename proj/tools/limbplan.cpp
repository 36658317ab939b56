// Copyright 2026 The limbplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command line front end: plan, forces, validate.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "limbplan/errors.hpp"
#include "limbplan/io.hpp"
#include "limbplan/pipeline.hpp"
#include "limbplan/scenario.hpp"

namespace fs = std::filesystem;
using namespace limbplan;

namespace {

enum ExitCode {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kInvalidEndpoint = 3,
  kNoPath = 4,
  kNoBase = 5,
  kSingular = 6,
};

int cmd_plan(const std::string& scenario_path, const std::string& out_dir,
             std::optional<std::uint64_t> seed) {
  Scenario scenario = load_scenario_file(scenario_path);
  if (seed) scenario.rng_seed = *seed;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  PipelineResult result;
  try {
    result = run_pipeline(scenario);
  } catch (const InvalidEndpoint& e) {
    std::cerr << "plan: " << e.what() << "\n";
    return kInvalidEndpoint;
  } catch (const NoPathFound& e) {
    std::cerr << "plan: " << e.what() << "\n";
    return kNoPath;
  }
  const fs::path out(out_dir);
  write_text_file(out / "report.json", report_to_json(result.report));
  if (!result.coupled) {
    std::cerr << result.report.failure << "\n";
    return kNoBase;
  }
  std::ostringstream traj;
  write_trajectory_csv(traj, *result.coupled);
  write_text_file(out / "trajectory.csv", traj.str());

  std::vector<HumanArmState> thetas;
  for (const auto& step : result.coupled->steps) thetas.push_back(step.theta);
  for (ClosureModel c : kAllClosures) {
    std::vector<ReactionSolution> reactions;
    try {
      reactions = replay_forces(scenario, *result.coupled, c);
    } catch (const SingularConfiguration& e) {
      std::cerr << "forces (" << closure_name(c) << "): " << e.what() << "\n";
      return kSingular;
    }
    std::ostringstream csv;
    write_forces_csv(csv, thetas, reactions);
    write_text_file(out / ("forces_" + std::string(closure_name(c)) + ".csv"), csv.str());
  }
  std::cout << "feasible: base after " << result.report.base_samples_tried << " sample(s), "
            << result.coupled->steps.size() << " steps, refined cost "
            << result.report.refined_cost << "\n";
  return kOk;
}

int cmd_forces(const std::string& scenario_path, const std::string& trajectory_path,
               const std::string& closure_text, bool zero_gravity, const std::string& out_path) {
  Scenario scenario = load_scenario_file(scenario_path);
  if (zero_gravity) scenario.gravity.setZero();
  const auto closure = parse_closure(closure_text);
  if (!closure) {
    std::cerr << "forces: unknown closure '" << closure_text << "'\n";
    return kValidation;
  }
  CoupledTrajectory traj;
  try {
    traj = read_trajectory_csv_file(trajectory_path);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    std::cerr << "forces: " << trajectory_path << ": " << e.what() << "\n";
    return kValidation;
  }
  std::vector<HumanArmState> thetas;
  std::vector<ReactionSolution> reactions;
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    thetas.push_back(traj.steps[i].theta);
    try {
      reactions.push_back(
          solve_reactions(scenario.human, traj.steps[i].theta, scenario.gravity, *closure));
    } catch (const SingularConfiguration& e) {
      std::cerr << "forces: step " << i << ": " << e.what() << "\n";
      return kSingular;
    }
  }
  std::ostringstream csv;
  write_forces_csv(csv, thetas, reactions);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    write_text_file(out_path, csv.str());
  }
  return kOk;
}

int cmd_validate(const std::string& scenario_path) {
  load_scenario_file(scenario_path);
  std::cout << scenario_path << ": ok\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plans safe repositioning trajectories for a passive human arm held by a robot."};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, trajectory_path, closure = "balanced", out_path;
  std::optional<std::uint64_t> seed;
  bool zero_gravity = false;

  auto* plan_cmd = app.add_subcommand("plan", "Plan, refine and couple a trajectory");
  plan_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  plan_cmd->add_option("--out", out_dir, "Output directory")->required();
  plan_cmd->add_option("--seed", seed, "Overrides the scenario's rng_seed");

  auto* forces_cmd = app.add_subcommand("forces", "Joint reactions along a trajectory CSV");
  forces_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  forces_cmd->add_option("--trajectory", trajectory_path, "trajectory.csv")->required();
  forces_cmd->add_option("--closure", closure, "balanced | shoulder_relief | elbow_relief")
      ->check(CLI::IsMember({"balanced", "shoulder_relief", "elbow_relief"}));
  forces_cmd->add_flag("--zero-gravity", zero_gravity, "Solve with gravity set to zero");
  forces_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*plan_cmd) return cmd_plan(scenario_path, out_dir, seed);
    if (*forces_cmd) {
      return cmd_forces(scenario_path, trajectory_path, closure, zero_gravity, out_path);
    }
    if (*validate_cmd) return cmd_validate(scenario_path);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario: " << e.what();
    if (e.line()) std::cerr << " (line " << *e.line() << ")";
    std::cerr << "\n";
    return kValidation;
  } catch (const IoError& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
