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
#include <random>
#include <vector>

#include "limbplan/model.hpp"
#include "limbplan/planner.hpp"
#include "limbplan/scenario.hpp"
#include "limbplan/statics.hpp"

namespace limbplan {

// Robot base placement [x y z ax ay az]: position plus rotation vector.
struct BasePose {
  Vector6d values = Vector6d::Zero();

  Eigen::Isometry3d to_isometry() const;
};

struct CoupledStep {
  HumanArmState theta = HumanArmState::Zero();
  Eigen::VectorXd q;
  Pose grasp;
  Wrench wrench = Wrench::Zero();
  ReactionSolution reactions;
};

struct CoupledTrajectory {
  std::vector<CoupledStep> steps;
  BasePose base;
};

struct IkOptions {
  int max_iterations = 200;
  // Converged when both errors fall below these.
  double position_tolerance = 1e-9;
  double orientation_tolerance = 1e-9;
  // Accepted (after the iteration budget) when both errors fall below these.
  double accept_position = 1e-5;
  double accept_orientation = 1e-4;
};

// Damped least squares IK of the tool frame toward `target` (common frame),
// seeded at q_init and kept inside the joint limits. nullopt on failure.
std::optional<Eigen::VectorXd> try_ik_solve(const RobotArmModel& robot, const BasePose& base,
                                            const Pose& target, const Eigen::VectorXd& q_init,
                                            const IkOptions& options = {});

// As try_ik_solve; throws IkDiverged on failure.
Eigen::VectorXd ik_solve(const RobotArmModel& robot, const BasePose& base, const Pose& target,
                         const Eigen::VectorXd& q_init, const IkOptions& options = {});

// Tool pose in the common frame for a robot placed at `base`.
Pose placed_robot_fk(const RobotArmModel& robot, const BasePose& base, const Eigen::VectorXd& q);

// Tool Jacobian in the common frame for a robot placed at `base`.
Eigen::MatrixXd placed_robot_jacobian(const RobotArmModel& robot, const BasePose& base,
                                      const Eigen::VectorXd& q);

// Follows the human trajectory with IK from one base pose. nullopt when any
// step fails IK, jumps by max_joint_step or more on some joint, or collides.
std::optional<CoupledTrajectory> couple_at_base(const Scenario& scenario,
                                                const HumanWaypoints& human_traj,
                                                const BasePose& base);

struct BaseSamplingResult {
  BasePose base;
  CoupledTrajectory trajectory;
  int samples_tried = 0;
};

// Rejection sampling of the robot base from N(mean, diag(cov)); the first
// sample admitting a coupled trajectory is accepted. Throws NoFeasibleBase.
BaseSamplingResult sample_base_pose(const Scenario& scenario, const HumanWaypoints& human_traj,
                                    std::mt19937_64& rng);

// Joint torques to tool wrench: w = pinv(J^T) tau, the least-squares inverse
// of tau = J^T w. Throws IllConditioned when cond(J) > 1e10.
Wrench robot_wrench_from_torques(const RobotArmModel& robot, const BasePose& base,
                                 const Eigen::VectorXd& q, const Eigen::VectorXd& tau);

// Human joint reactions at every step under `closure`.
std::vector<ReactionSolution> replay_forces(const Scenario& scenario,
                                            const CoupledTrajectory& coupled,
                                            ClosureModel closure);

struct GraspResidual {
  double position = 0.0;     // max over steps, m
  double orientation = 0.0;  // max over steps, rad
};

// Largest mismatch between the human grasp frame and the robot tool frame.
GraspResidual grasp_residual(const Scenario& scenario, const CoupledTrajectory& coupled);

}  // namespace limbplan
