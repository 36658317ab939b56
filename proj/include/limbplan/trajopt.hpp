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

#include <vector>

#include "limbplan/planner.hpp"
#include "limbplan/statics.hpp"

namespace limbplan {

struct RefinedTrajectory {
  // The planner path at the refined discretization, before any descent step.
  HumanWaypoints initial;
  HumanWaypoints waypoints;
  double cost = 0.0;
  std::vector<ReactionSolution> reactions;  // per waypoint, scenario closure
  int iterations = 0;                       // accepted descent steps
  double run_time_s = 0.0;
  // False if some waypoint has no statics solution.
  bool valid = true;
};

// Picks `count` states along the path. When the path has at least `count`
// waypoints a subset is taken (so neither length can grow); otherwise states
// are interpolated at uniform joint-space arc length.
HumanWaypoints resample_path(const HumanWaypoints& path, int count);

// Central-difference gradient of path_cost with respect to every interior
// waypoint; the endpoint entries are zero.
HumanWaypoints finite_diff_gradient(const HumanArmModel& model, const HumanWaypoints& waypoints,
                                    double c_p, double c_o, double h);

// Feasible descent on the grasp-pose path cost. The path is resampled to
// scenario.n_waypoints (kept dense if the resampled path is invalid), then each iteration takes a backtracking step along
// the negative gradient (its component along the path tangent removed so
// waypoints do not bunch up). A step is kept only if no moved waypoint or
// adjacent edge becomes invalid, the total cost drops, and neither the
// position nor the orientation length grows. Stops after
// scenario.refine.max_iterations, at the refine time budget, or when the
// relative improvement over the last 10 iterations is below 1e-6.
RefinedTrajectory refine(const Scenario& scenario, const HumanPath& path);

}  // namespace limbplan
