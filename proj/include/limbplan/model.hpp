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
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "limbplan/pose.hpp"

namespace limbplan {

inline constexpr int kHumanDofs = 5;

// Shoulder rotations (x, y', z'' intrinsic), elbow flexion, forearm rotation.
using HumanArmState = Eigen::Matrix<double, kHumanDofs, 1>;
using HumanJacobian = Eigen::Matrix<double, 6, kHumanDofs>;
using Wrench = Vector6d;  // [fx fy fz tx ty tz]

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return x >= lower && x <= upper; }
  double width() const { return upper - lower; }
  double clamp(double x) const { return x < lower ? lower : (x > upper ? upper : x); }
};

// Two-link passive human arm: a spherical shoulder fixed in space, an upper
// arm capsule, a two-axis elbow and a forearm capsule.
//
// In the shoulder frame the zero configuration points the upper arm along -z.
// theta[0..2] rotate the upper arm about x, then y', then z'' (the humeral
// axis). theta[3] flexes the elbow about the upper-arm x axis and theta[4]
// rotates the forearm about its own axis. The grasp frame sits grasp_offset
// down the forearm, rotated by grasp_orientation relative to the forearm frame.
struct HumanArmModel {
  double upper_arm_radius = 0.095;
  double upper_arm_length = 0.22;
  double upper_arm_mass = 5.0;
  double lower_arm_radius = 0.075;
  double lower_arm_length = 0.25;
  double lower_arm_mass = 3.0;
  Pose shoulder_origin;
  std::array<Interval, kHumanDofs> joint_limits;
  double grasp_offset = 0.22;
  Eigen::Vector3d grasp_orientation = Eigen::Vector3d::Zero();

  HumanArmModel();

  // Throws ScenarioError naming the first violated invariant.
  void validate() const;
  bool within_limits(const HumanArmState& theta) const;
};

// Supine default: shoulder 0.15 m above the ground at the origin, arm at
// rest pointing along -x (toward the feet), shoulder-frame y pointing up.
Pose default_shoulder_origin();
std::array<Interval, kHumanDofs> default_human_joint_limits();

// All frames of the human chain expressed in the common (robot-base) frame.
struct HumanArmFrames {
  Eigen::Isometry3d shoulder;   // after the three shoulder rotations
  Eigen::Isometry3d elbow;      // at the elbow, after flexion
  Eigen::Isometry3d forearm;    // at the elbow, after forearm rotation
  Eigen::Isometry3d grasp;
  Eigen::Vector3d wrist;        // distal end of the forearm capsule

  Eigen::Vector3d shoulder_point() const { return shoulder.translation(); }
  Eigen::Vector3d elbow_point() const { return elbow.translation(); }
};

HumanArmFrames human_frames(const HumanArmModel& model, const HumanArmState& theta);

struct HumanFkResult {
  Pose elbow_pose;
  Pose grasp_pose;
};

HumanFkResult human_fk(const HumanArmModel& model, const HumanArmState& theta);

// Geometric Jacobian of the grasp frame: rows [v; w] in the common frame.
HumanJacobian human_jacobian(const HumanArmModel& model, const HumanArmState& theta);

// Modified (Craig) DH parameters of one revolute joint:
// T = RotX(alpha) * TransX(a) * RotZ(q + theta_offset) * TransZ(d).
struct LinkFrame {
  double a = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double theta_offset = 0.0;
};

struct CollisionCapsule {
  // 0 = robot base, k = frame of joint k (1-based), n_joints + 1 = tool frame.
  int frame = 0;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

struct RobotArmModel {
  std::vector<LinkFrame> link_frames;
  std::vector<Interval> joint_limits;
  Pose tool;                        // flange-to-grasp transform
  Eigen::VectorXd home;             // IK seed for the first trajectory step
  std::vector<CollisionCapsule> collision_capsules;

  int n_joints() const { return static_cast<int>(link_frames.size()); }
  void validate() const;
  bool within_limits(const Eigen::VectorXd& q) const;
};

// A seven-joint arm with Panda-like link dimensions and limits.
RobotArmModel default_robot_model();

// Frames 0..n+1 (base, each joint, tool) relative to the robot base.
std::vector<Eigen::Isometry3d> robot_frames(const RobotArmModel& model,
                                            const Eigen::VectorXd& q);

// End-effector (tool) pose relative to the robot base.
Pose robot_fk(const RobotArmModel& model, const Eigen::VectorXd& q);

// 6 x n geometric Jacobian of the tool frame in the robot-base frame.
Eigen::MatrixXd robot_jacobian(const RobotArmModel& model, const Eigen::VectorXd& q);

}  // namespace limbplan
