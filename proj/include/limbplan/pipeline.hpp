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
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limbplan/coupling.hpp"
#include "limbplan/planner.hpp"
#include "limbplan/scenario.hpp"
#include "limbplan/trajopt.hpp"

namespace limbplan {

struct ClosureForceSummary {
  ClosureModel closure = ClosureModel::kBalanced;
  double max_shoulder_force = 0.0;  // N, max norm over steps
  double max_elbow_force = 0.0;     // N
  double max_elbow_torque = 0.0;    // N m, max |t|
  bool safe = true;                 // every step within the safety limits
  // First step index at which the statics system is singular, if any.
  std::optional<int> singular_step;
};

struct RunReport {
  std::uint64_t seed = 0;
  int csv_version = 0;
  ClosureModel closure = ClosureModel::kBalanced;
  double plan_time_s = 0.0;
  double refine_time_s = 0.0;
  double base_time_s = 0.0;
  double total_time_s = 0.0;
  int planner_batches = 0;
  int refine_iterations = 0;
  int coarse_waypoints = 0;
  int refined_waypoints = 0;
  double coarse_position_length = 0.0;
  double coarse_orientation_length = 0.0;
  double coarse_cost = 0.0;
  double refined_position_length = 0.0;
  double refined_orientation_length = 0.0;
  double refined_cost = 0.0;
  int base_samples_tried = 0;
  bool feasible = false;
  std::optional<BasePose> base;
  std::optional<GraspResidual> grasp_residual;
  std::vector<ClosureForceSummary> closures;  // all three, kAllClosures order
  std::string failure;                        // empty when feasible
};

std::string report_to_json(const RunReport& report, int indent = 2);

struct PipelineResult {
  HumanPath coarse;
  RefinedTrajectory refined;
  // Present when a feasible robot base was found.
  std::optional<CoupledTrajectory> coupled;
  RunReport report;
};

// Plans, refines and couples the human trajectory to the robot. A missing
// base is reported through report.feasible (no throw); InvalidEndpoint and
// NoPathFound propagate.
PipelineResult run_pipeline(const Scenario& scenario);

// Per-closure force maxima for a human trajectory.
ClosureForceSummary summarize_forces(const Scenario& scenario,
                                     const std::vector<HumanArmState>& thetas,
                                     ClosureModel closure);

}  // namespace limbplan
