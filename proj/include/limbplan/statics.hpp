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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "limbplan/model.hpp"

namespace limbplan {

// Quasi-static joint reactions of the two-link arm held at the grasp point.
//
// Sign conventions: shoulder_force is the force the torso exerts on the upper
// arm; elbow_force and elbow_torque are the force and torque the forearm exerts
// on the upper arm (so both joints "support" the upper arm). The elbow torque
// acts about elbow_torque_axis(), the unit axis orthogonal to both elbow
// revolute axes. wrench is what the robot applies at the grasp point, with the
// torque taken about the grasp point. Everything is in the common frame.
struct ReactionSolution {
  Eigen::Vector3d shoulder_force = Eigen::Vector3d::Zero();
  Eigen::Vector3d elbow_force = Eigen::Vector3d::Zero();
  double elbow_torque = 0.0;
  Wrench wrench = Wrench::Zero();
};

struct SafetyLimits {
  double shoulder_force_max = 150.0;  // N
  double elbow_force_max = 400.0;     // N
  double elbow_torque_max = 10.0;     // N m

  void validate() const;
};

enum class ClosureModel { kShoulderRelief, kElbowRelief, kBalanced };

std::string_view closure_name(ClosureModel closure);
std::optional<ClosureModel> parse_closure(std::string_view name);
inline constexpr ClosureModel kAllClosures[] = {
    ClosureModel::kBalanced, ClosureModel::kShoulderRelief, ClosureModel::kElbowRelief};

// Condition number above which solve_reactions reports SingularConfiguration.
inline constexpr double kSingularCondition = 1e12;

// Unit vector "up", i.e. opposite to gravity; +z when gravity is zero.
Eigen::Vector3d vertical_direction(const Eigen::Vector3d& gravity);

Eigen::Vector3d elbow_torque_axis(const HumanArmFrames& frames);

// sin(phi / 2), phi being the angle between the gravity direction and the
// elbow-to-shoulder direction of the humerus. 0 with the upper arm pointing
// straight up, 1 hanging straight down.
double balanced_ratio(const HumanArmModel& model, const HumanArmState& theta,
                      const Eigen::Vector3d& gravity);

// Solves the 12 link equilibrium equations plus the closure equation.
// Throws SingularConfiguration when the system's condition number exceeds
// kSingularCondition.
ReactionSolution solve_reactions(const HumanArmModel& model, const HumanArmState& theta,
                                 const Eigen::Vector3d& gravity, ClosureModel closure);

// Force and moment sums of both links for a candidate solution, ordered
// [upper force, upper moment about shoulder, lower force, lower moment about
// elbow]. Zero at equilibrium.
Eigen::Matrix<double, 12, 1> equilibrium_residual(const HumanArmModel& model,
                                                  const HumanArmState& theta,
                                                  const Eigen::Vector3d& gravity,
                                                  const ReactionSolution& sol);

// Residual of the closure equation for the given model.
double closure_residual(const HumanArmModel& model, const HumanArmState& theta,
                        const Eigen::Vector3d& gravity, ClosureModel closure,
                        const ReactionSolution& sol);

struct SafetyReport {
  bool safe = true;
  // limit - value; a term fails when its margin is <= 0.
  double shoulder_force_margin = 0.0;
  double elbow_force_margin = 0.0;
  double elbow_torque_margin = 0.0;
  std::vector<std::string> violations;
};

SafetyReport check_safety(const ReactionSolution& sol, const SafetyLimits& limits);

// P = sigma * A with sigma in N/mm^2 and A in mm^2.
double yield_force(double sigma_yield, double area);

struct PlanarFbdSolution {
  double f_y = 0.0;
  double t_z = 0.0;
  double r_x = 0.0;
  double r_y = 0.0;
};

// Single pinned link of a planar chain held at its tip: three equilibrium
// equations in five unknowns. f_x is supplied and the closure r_y = 0 is
// imposed, which leaves r_x = m g sin(theta_a + theta_b) - f_x, i.e. the joint
// reaction is fixed only once the external force is.
PlanarFbdSolution solve_planar_fbd(double link_mass, double link_length, double theta_a,
                                   double theta_b, double f_x, double g = 9.81);

}  // namespace limbplan
