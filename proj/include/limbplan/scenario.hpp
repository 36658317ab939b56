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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "limbplan/collision.hpp"
#include "limbplan/model.hpp"
#include "limbplan/statics.hpp"

namespace limbplan {

struct CostWeights {
  double position = 1.0;     // c_p
  double orientation = 1.0;  // c_o
};

// Wall-clock limit of each stage, seconds.
struct TimeBudget {
  double plan = 120.0;
  double refine = 120.0;
  double base = 120.0;
};

struct PlannerSettings {
  int batch_size = 100;
  int max_batches = 20;
  double goal_bias = 0.05;
};

struct RefineSettings {
  int max_iterations = 200;
  double fd_step = 1e-6;
};

struct BaseSamplingSettings {
  int max_samples = 1000;
  double max_joint_step = 0.2;
};

struct Scenario {
  HumanArmModel human;
  RobotArmModel robot = default_robot_model();
  HumanArmState theta_start = HumanArmState::Zero();
  HumanArmState theta_goal = HumanArmState::Zero();
  Eigen::Vector3d gravity{0.0, 0.0, -9.81};
  double ground_height = 0.0;
  std::vector<Primitive> obstacles;
  SafetyLimits safety;
  ClosureModel closure = ClosureModel::kBalanced;
  Vector6d base_pose_mean = default_base_pose_mean();
  Vector6d base_pose_cov_diag = default_base_pose_cov_diag();
  CostWeights cost_weights;
  TimeBudget time_budget;
  std::uint64_t rng_seed = 0;
  int n_waypoints = 50;
  double collision_margin = 0.005;
  double edge_resolution = 0.05;
  PlannerSettings planner;
  RefineSettings refine;
  BaseSamplingSettings base_sampling;

  static Vector6d default_base_pose_mean();
  static Vector6d default_base_pose_cov_diag();

  // Throws ScenarioError naming the violated invariant.
  void validate() const;
};

// Parses and validates a scenario JSON document. Missing optional fields take
// the defaults above. Throws ScenarioError (with a line number for syntax
// errors).
Scenario load_scenario(std::string_view text);
// Also throws IoError when the file cannot be read.
Scenario load_scenario_file(const std::filesystem::path& path);

std::string scenario_to_json(const Scenario& scenario, int indent = 2);

}  // namespace limbplan
