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
#include "limbplan/pipeline.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "limbplan/errors.hpp"
#include "limbplan/io.hpp"

namespace limbplan {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

ClosureForceSummary summarize_forces(const Scenario& scenario,
                                     const std::vector<HumanArmState>& thetas,
                                     ClosureModel closure) {
  ClosureForceSummary s;
  s.closure = closure;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    ReactionSolution r;
    try {
      r = solve_reactions(scenario.human, thetas[i], scenario.gravity, closure);
    } catch (const SingularConfiguration&) {
      if (!s.singular_step) s.singular_step = static_cast<int>(i);
      s.safe = false;
      continue;
    }
    s.max_shoulder_force = std::max(s.max_shoulder_force, r.shoulder_force.norm());
    s.max_elbow_force = std::max(s.max_elbow_force, r.elbow_force.norm());
    s.max_elbow_torque = std::max(s.max_elbow_torque, std::abs(r.elbow_torque));
    if (!check_safety(r, scenario.safety).safe) s.safe = false;
  }
  return s;
}

PipelineResult run_pipeline(const Scenario& scenario) {
  const auto t0 = Clock::now();
  PipelineResult result;
  RunReport& report = result.report;
  report.seed = scenario.rng_seed;
  report.csv_version = kCsvVersion;
  report.closure = scenario.closure;

  result.coarse = plan(scenario);
  report.plan_time_s = result.coarse.run_time_s;
  report.planner_batches = result.coarse.iterations;
  result.refined = refine(scenario, result.coarse);
  // Both lengths are measured at the refined discretization; a finer sampling
  // of the same curve would otherwise read longer.
  report.coarse_waypoints = static_cast<int>(result.refined.initial.size());
  const PathLengths coarse = path_lengths(scenario.human, result.refined.initial);
  report.coarse_position_length = coarse.position;
  report.coarse_orientation_length = coarse.orientation;
  report.coarse_cost = path_cost(scenario.human, result.refined.initial,
                                 scenario.cost_weights.position, scenario.cost_weights.orientation);
  report.refine_time_s = result.refined.run_time_s;
  report.refine_iterations = result.refined.iterations;
  report.refined_waypoints = static_cast<int>(result.refined.waypoints.size());
  const PathLengths refined = path_lengths(scenario.human, result.refined.waypoints);
  report.refined_position_length = refined.position;
  report.refined_orientation_length = refined.orientation;
  report.refined_cost = result.refined.cost;

  for (ClosureModel c : kAllClosures) {
    report.closures.push_back(summarize_forces(scenario, result.refined.waypoints, c));
  }

  if (!result.refined.valid) {
    report.failure = "refine: refined trajectory has a singular statics configuration";
  } else {
    const auto tb = Clock::now();
    std::mt19937_64 rng(scenario.rng_seed);
    try {
      BaseSamplingResult base = sample_base_pose(scenario, result.refined.waypoints, rng);
      report.base_samples_tried = base.samples_tried;
      report.base = base.base;
      report.grasp_residual = grasp_residual(scenario, base.trajectory);
      result.coupled = std::move(base.trajectory);
      report.feasible = true;
    } catch (const NoFeasibleBase& e) {
      report.base_samples_tried = scenario.base_sampling.max_samples;
      report.failure = std::string("base sampling: ") + e.what();
    }
    report.base_time_s = seconds_since(tb);
  }
  report.total_time_s = seconds_since(t0);
  return result;
}

std::string report_to_json(const RunReport& r, int indent) {
  json closures = json::object();
  for (const auto& c : r.closures) {
    json entry = {{"max_shoulder_force", c.max_shoulder_force},
                  {"max_elbow_force", c.max_elbow_force},
                  {"max_elbow_torque", c.max_elbow_torque},
                  {"safe", c.safe}};
    entry["singular_step"] = c.singular_step ? json(*c.singular_step) : json(nullptr);
    closures[std::string(closure_name(c.closure))] = entry;
  }
  json j = {
      {"seed", r.seed},
      {"csv_version", r.csv_version},
      {"closure", std::string(closure_name(r.closure))},
      {"feasible", r.feasible},
      {"run_time_s",
       {{"plan", r.plan_time_s},
        {"refine", r.refine_time_s},
        {"base", r.base_time_s},
        {"total", r.total_time_s}}},
      {"coarse",
       {{"position_length", r.coarse_position_length},
        {"orientation_length", r.coarse_orientation_length},
        {"cost", r.coarse_cost},
        {"waypoints", r.coarse_waypoints},
        {"batches", r.planner_batches}}},
      {"refined",
       {{"position_length", r.refined_position_length},
        {"orientation_length", r.refined_orientation_length},
        {"cost", r.refined_cost},
        {"waypoints", r.refined_waypoints},
        {"iterations", r.refine_iterations}}},
      {"base_samples_tried", r.base_samples_tried},
      {"base_pose", r.base ? vec_json(r.base->values) : json(nullptr)},
      {"closures", closures},
  };
  if (r.grasp_residual) {
    j["grasp_residual"] = {{"position", r.grasp_residual->position},
                           {"orientation", r.grasp_residual->orientation}};
  } else {
    j["grasp_residual"] = nullptr;
  }
  j["failure"] = r.failure.empty() ? json(nullptr) : json(r.failure);
  return j.dump(indent) + "\n";
}

}  // namespace limbplan
