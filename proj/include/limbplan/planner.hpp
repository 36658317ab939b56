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

#include <optional>
#include <string>
#include <vector>

#include "limbplan/model.hpp"
#include "limbplan/scenario.hpp"

namespace limbplan {

using HumanWaypoints = std::vector<HumanArmState>;

struct HumanPath {
  HumanWaypoints waypoints;
  double run_time_s = 0.0;
  int iterations = 0;  // batches processed
  double cost = 0.0;
  // Best cost after each batch (non-increasing once a solution exists).
  std::vector<double> batch_costs;
};

struct PathLengths {
  double position = 0.0;     // sum of grasp translations, m
  double orientation = 0.0;  // sum of grasp relative-rotation angles, rad
};

PathLengths path_lengths(const HumanArmModel& model, const HumanWaypoints& waypoints);

// sum_i c_p |p_i - p_{i-1}| + c_o Angle(o_i o_{i-1}^-1) over the grasp poses.
double path_cost(const HumanArmModel& model, const HumanWaypoints& waypoints, double c_p,
                 double c_o);

// Cost of a single step between two grasp frames.
double step_cost(const Eigen::Isometry3d& a, const Eigen::Isometry3d& b, double c_p,
                 double c_o);

// nullopt when valid; otherwise a short reason (limits, collision, statics).
std::optional<std::string> invalidity_reason(const Scenario& scenario,
                                             const HumanArmState& theta);

// Joint limits, clearance, a non-singular statics solve and the safety limits
// under the scenario's closure model.
bool is_valid(const Scenario& scenario, const HumanArmState& theta);

// Straight joint-space segment a -> b split so that no joint moves more than
// `resolution` per step. Includes both endpoints.
HumanWaypoints interpolate_edge(const HumanArmState& a, const HumanArmState& b,
                                double resolution);

// Validity of the interior samples of the segment a -> b at the scenario's
// edge resolution. Endpoints are not re-checked.
bool edge_valid(const Scenario& scenario, const HumanArmState& a, const HumanArmState& b);

// Validity of every waypoint and every interpolated edge state.
bool path_valid(const Scenario& scenario, const HumanWaypoints& waypoints);

// Batch-sampling, anytime planner over the human joint space. Each batch adds
// uniformly drawn valid states (with a small goal bias) restricted to the
// informed set of the current solution, rebuilds a k-nearest roadmap and runs
// lazy A* with the grasp-pose cost; edges are collision/statics checked only
// when they lie on a candidate path. The returned waypoints are densified at
// the edge resolution. Deterministic for a fixed scenario and seed when the
// batch budget, not the time budget, ends the run.
//
// Throws InvalidEndpoint or NoPathFound.
HumanPath plan(const Scenario& scenario);

}  // namespace limbplan
