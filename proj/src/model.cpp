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
#include "limbplan/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

using std::numbers::pi;

Eigen::Isometry3d rot_x(double angle) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix();
  return t;
}

Eigen::Isometry3d rot_y(double angle) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()).toRotationMatrix();
  return t;
}

Eigen::Isometry3d rot_z(double angle) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  return t;
}

Eigen::Isometry3d translate(double x, double y, double z) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = Eigen::Vector3d(x, y, z);
  return t;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ScenarioError(std::string("human.") + name + " must be strictly positive");
  }
}

}  // namespace

HumanArmModel::HumanArmModel()
    : shoulder_origin(default_shoulder_origin()),
      joint_limits(default_human_joint_limits()),
      grasp_orientation(pi / 2.0, 0.0, 0.0) {}

Pose default_shoulder_origin() {
  // Columns: shoulder x -> +y, shoulder y -> +z, shoulder z -> +x; a 120 degree
  // rotation about (1, 1, 1).
  const double angle = 2.0 * pi / 3.0;
  return Pose(Eigen::Vector3d(0.0, 0.0, 0.15),
              Eigen::Vector3d::Constant(angle / std::sqrt(3.0)));
}

std::array<Interval, kHumanDofs> default_human_joint_limits() {
  return {Interval{-pi / 2.0, pi / 2.0}, Interval{-pi / 2.0, pi / 2.0},
          Interval{-pi / 2.0, pi / 2.0}, Interval{0.0, 2.6}, Interval{-pi / 2.0, pi / 2.0}};
}

void HumanArmModel::validate() const {
  require_positive(upper_arm_radius, "upper_arm_radius");
  require_positive(upper_arm_length, "upper_arm_length");
  require_positive(upper_arm_mass, "upper_arm_mass");
  require_positive(lower_arm_radius, "lower_arm_radius");
  require_positive(lower_arm_length, "lower_arm_length");
  require_positive(lower_arm_mass, "lower_arm_mass");
  if (!(grasp_offset > 0.0 && grasp_offset <= lower_arm_length)) {
    throw ScenarioError("human.grasp_offset must lie in (0, lower_arm_length]");
  }
  for (int j = 0; j < kHumanDofs; ++j) {
    if (!(joint_limits[j].lower < joint_limits[j].upper)) {
      throw ScenarioError("human.joint_limits[" + std::to_string(j) +
                          "] must satisfy lower < upper");
    }
  }
  if (!shoulder_origin.position.allFinite() || !shoulder_origin.orientation.allFinite()) {
    throw ScenarioError("human.shoulder_origin must be finite");
  }
}

bool HumanArmModel::within_limits(const HumanArmState& theta) const {
  for (int j = 0; j < kHumanDofs; ++j) {
    if (!joint_limits[j].contains(theta[j])) return false;
  }
  return true;
}

HumanArmFrames human_frames(const HumanArmModel& model, const HumanArmState& theta) {
  HumanArmFrames f;
  f.shoulder = model.shoulder_origin.to_isometry() * rot_x(theta[0]) * rot_y(theta[1]) *
               rot_z(theta[2]);
  f.elbow = f.shoulder * translate(0.0, 0.0, -model.upper_arm_length) * rot_x(theta[3]);
  f.forearm = f.elbow * rot_z(theta[4]);
  Eigen::Isometry3d grasp_local = translate(0.0, 0.0, -model.grasp_offset);
  grasp_local.linear() = rotation_from_axis_angle(model.grasp_orientation);
  f.grasp = f.forearm * grasp_local;
  f.wrist = f.forearm * Eigen::Vector3d(0.0, 0.0, -model.lower_arm_length);
  return f;
}

HumanFkResult human_fk(const HumanArmModel& model, const HumanArmState& theta) {
  const HumanArmFrames f = human_frames(model, theta);
  return {Pose::from_isometry(f.elbow), Pose::from_isometry(f.grasp)};
}

HumanJacobian human_jacobian(const HumanArmModel& model, const HumanArmState& theta) {
  const HumanArmFrames f = human_frames(model, theta);
  const Eigen::Matrix3d base = model.shoulder_origin.rotation();
  const Eigen::Matrix3d after_x =
      base * Eigen::AngleAxisd(theta[0], Eigen::Vector3d::UnitX()).toRotationMatrix();

  const std::array<Eigen::Vector3d, kHumanDofs> axes = {
      base.col(0), after_x.col(1), f.shoulder.linear().col(2), f.elbow.linear().col(0),
      f.forearm.linear().col(2)};
  const std::array<Eigen::Vector3d, kHumanDofs> points = {
      f.shoulder_point(), f.shoulder_point(), f.shoulder_point(), f.elbow_point(),
      f.elbow_point()};

  const Eigen::Vector3d tip = f.grasp.translation();
  HumanJacobian j;
  for (int k = 0; k < kHumanDofs; ++k) {
    j.block<3, 1>(0, k) = axes[k].cross(tip - points[k]);
    j.block<3, 1>(3, k) = axes[k];
  }
  return j;
}

void RobotArmModel::validate() const {
  if (n_joints() < 6) throw ScenarioError("robot.link_frames must describe at least 6 joints");
  if (static_cast<int>(joint_limits.size()) != n_joints()) {
    throw ScenarioError("robot.joint_limits must have one interval per joint");
  }
  for (int j = 0; j < n_joints(); ++j) {
    if (!(joint_limits[j].lower < joint_limits[j].upper)) {
      throw ScenarioError("robot.joint_limits[" + std::to_string(j) +
                          "] must satisfy lower < upper");
    }
  }
  if (home.size() != n_joints()) throw ScenarioError("robot.home must have n_joints entries");
  for (std::size_t i = 0; i < collision_capsules.size(); ++i) {
    const auto& c = collision_capsules[i];
    if (!(c.radius > 0.0)) {
      throw ScenarioError("robot.collision_capsules[" + std::to_string(i) +
                          "].radius must be strictly positive");
    }
    if (c.frame < 0 || c.frame > n_joints() + 1) {
      throw ScenarioError("robot.collision_capsules[" + std::to_string(i) +
                          "].frame out of range");
    }
  }
}

bool RobotArmModel::within_limits(const Eigen::VectorXd& q) const {
  if (q.size() != n_joints()) return false;
  for (int j = 0; j < n_joints(); ++j) {
    if (!joint_limits[j].contains(q[j])) return false;
  }
  return true;
}

RobotArmModel default_robot_model() {
  RobotArmModel m;
  m.link_frames = {{0.0, 0.0, 0.333, 0.0},       {0.0, -pi / 2.0, 0.0, 0.0},
                   {0.0, pi / 2.0, 0.316, 0.0},  {0.0825, pi / 2.0, 0.0, 0.0},
                   {-0.0825, -pi / 2.0, 0.384, 0.0}, {0.0, pi / 2.0, 0.0, 0.0},
                   {0.088, pi / 2.0, 0.0, 0.0}};
  m.joint_limits = {{-2.8973, 2.8973}, {-1.7628, 1.7628}, {-2.8973, 2.8973},
                    {-3.0718, -0.0698}, {-2.8973, 2.8973}, {-0.0175, 3.7525},
                    {-2.8973, 2.8973}};
  m.tool = Pose(Eigen::Vector3d(0.0, 0.0, 0.2104), Eigen::Vector3d(0.0, 0.0, -pi / 4.0));
  m.home.resize(7);
  m.home << 0.0, -pi / 4.0, 0.0, -3.0 * pi / 4.0, 0.0, pi / 2.0, pi / 4.0;
  m.collision_capsules = {
      {0, Eigen::Vector3d(0.0, 0.0, 0.05), Eigen::Vector3d(0.0, 0.0, 0.25), 0.09},
      {2, Eigen::Vector3d(0.0, 0.0, 0.0), Eigen::Vector3d(0.0, -0.25, 0.0), 0.07},
      {4, Eigen::Vector3d(-0.0825, 0.08, 0.0), Eigen::Vector3d(-0.0825, 0.30, 0.0), 0.06},
      {8, Eigen::Vector3d(0.0, -0.08, -0.07), Eigen::Vector3d(0.0, 0.08, -0.07), 0.03},
  };
  return m;
}

std::vector<Eigen::Isometry3d> robot_frames(const RobotArmModel& model,
                                            const Eigen::VectorXd& q) {
  std::vector<Eigen::Isometry3d> frames;
  frames.reserve(model.link_frames.size() + 2);
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  frames.push_back(t);
  for (int j = 0; j < model.n_joints(); ++j) {
    const LinkFrame& l = model.link_frames[j];
    t = t * rot_x(l.alpha) * translate(l.a, 0.0, 0.0) * rot_z(q[j] + l.theta_offset) *
        translate(0.0, 0.0, l.d);
    frames.push_back(t);
  }
  frames.push_back(t * model.tool.to_isometry());
  return frames;
}

Pose robot_fk(const RobotArmModel& model, const Eigen::VectorXd& q) {
  return Pose::from_isometry(robot_frames(model, q).back());
}

Eigen::MatrixXd robot_jacobian(const RobotArmModel& model, const Eigen::VectorXd& q) {
  const auto frames = robot_frames(model, q);
  const Eigen::Vector3d tip = frames.back().translation();
  Eigen::MatrixXd j(6, model.n_joints());
  for (int k = 0; k < model.n_joints(); ++k) {
    const Eigen::Vector3d axis = frames[k + 1].linear().col(2);
    j.block<3, 1>(0, k) = axis.cross(tip - frames[k + 1].translation());
    j.block<3, 1>(3, k) = axis;
  }
  return j;
}

}  // namespace limbplan
