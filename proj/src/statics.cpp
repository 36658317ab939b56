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
#include "limbplan/statics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

using Matrix13d = Eigen::Matrix<double, 13, 13>;
using Vector13d = Eigen::Matrix<double, 13, 1>;

// Unknown layout: [r_shoulder(3) r_elbow(3) t_elbow(1) f(3) t(3)].
constexpr int kShoulder = 0;
constexpr int kElbow = 3;
constexpr int kElbowTorque = 6;
constexpr int kForce = 7;
constexpr int kTorque = 10;

struct LinkGeometry {
  Eigen::Vector3d shoulder;
  Eigen::Vector3d elbow;
  Eigen::Vector3d grasp;
  Eigen::Vector3d upper_com;
  Eigen::Vector3d lower_com;
  Eigen::Vector3d torque_axis;
};

LinkGeometry link_geometry(const HumanArmModel& model, const HumanArmState& theta) {
  const HumanArmFrames f = human_frames(model, theta);
  LinkGeometry g;
  g.shoulder = f.shoulder_point();
  g.elbow = f.elbow_point();
  g.grasp = f.grasp.translation();
  g.upper_com = 0.5 * (g.shoulder + g.elbow);
  g.lower_com = 0.5 * (g.elbow + f.wrist);
  g.torque_axis = elbow_torque_axis(f);
  return g;
}

Eigen::Matrix<double, 1, 13> closure_row(ClosureModel closure, const Eigen::Vector3d& up,
                                         double ratio) {
  Eigen::Matrix<double, 1, 13> row = Eigen::Matrix<double, 1, 13>::Zero();
  switch (closure) {
    case ClosureModel::kShoulderRelief:
      row.segment<3>(kShoulder) = up.transpose();
      break;
    case ClosureModel::kElbowRelief:
      row.segment<3>(kElbow) = up.transpose();
      break;
    case ClosureModel::kBalanced:
      row.segment<3>(kShoulder) = up.transpose();
      row.segment<3>(kElbow) = -ratio * up.transpose();
      break;
  }
  return row;
}

}  // namespace

void SafetyLimits::validate() const {
  if (!(shoulder_force_max > 0.0 && elbow_force_max > 0.0 && elbow_torque_max > 0.0)) {
    throw ScenarioError("safety limits must all be strictly positive");
  }
}

std::string_view closure_name(ClosureModel closure) {
  switch (closure) {
    case ClosureModel::kShoulderRelief: return "shoulder_relief";
    case ClosureModel::kElbowRelief: return "elbow_relief";
    case ClosureModel::kBalanced: return "balanced";
  }
  return "balanced";
}

std::optional<ClosureModel> parse_closure(std::string_view name) {
  for (ClosureModel c : kAllClosures) {
    if (closure_name(c) == name) return c;
  }
  return std::nullopt;
}

Eigen::Vector3d vertical_direction(const Eigen::Vector3d& gravity) {
  const double n = gravity.norm();
  if (n == 0.0) return Eigen::Vector3d::UnitZ();
  return -gravity / n;
}

Eigen::Vector3d elbow_torque_axis(const HumanArmFrames& frames) {
  // flexion axis (elbow x) x forearm axis (-elbow z) = elbow y
  return frames.elbow.linear().col(1);
}

double balanced_ratio(const HumanArmModel& model, const HumanArmState& theta,
                      const Eigen::Vector3d& gravity) {
  const HumanArmFrames f = human_frames(model, theta);
  const Eigen::Vector3d to_shoulder = (f.shoulder_point() - f.elbow_point()).normalized();
  const Eigen::Vector3d down = -vertical_direction(gravity);
  const double c = std::clamp(down.dot(to_shoulder), -1.0, 1.0);
  return std::sin(0.5 * std::acos(c));
}

ReactionSolution solve_reactions(const HumanArmModel& model, const HumanArmState& theta,
                                 const Eigen::Vector3d& gravity, ClosureModel closure) {
  const LinkGeometry g = link_geometry(model, theta);
  const Eigen::Vector3d w_upper = model.upper_arm_mass * gravity;
  const Eigen::Vector3d w_lower = model.lower_arm_mass * gravity;

  Matrix13d a = Matrix13d::Zero();
  Vector13d b = Vector13d::Zero();
  const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();

  // Upper arm, force: r_s + r_e + m_u g = 0.
  a.block<3, 3>(0, kShoulder) = eye;
  a.block<3, 3>(0, kElbow) = eye;
  b.segment<3>(0) = -w_upper;
  // Upper arm, moment about the shoulder.
  a.block<3, 3>(3, kElbow) = skew(g.elbow - g.shoulder);
  a.block<3, 1>(3, kElbowTorque) = g.torque_axis;
  b.segment<3>(3) = -(g.upper_com - g.shoulder).cross(w_upper);
  // Forearm, force: -r_e + f + m_l g = 0.
  a.block<3, 3>(6, kElbow) = -eye;
  a.block<3, 3>(6, kForce) = eye;
  b.segment<3>(6) = -w_lower;
  // Forearm, moment about the elbow.
  a.block<3, 3>(9, kForce) = skew(g.grasp - g.elbow);
  a.block<3, 3>(9, kTorque) = eye;
  a.block<3, 1>(9, kElbowTorque) = -g.torque_axis;
  b.segment<3>(9) = -(g.lower_com - g.elbow).cross(w_lower);

  const double ratio =
      closure == ClosureModel::kBalanced ? balanced_ratio(model, theta, gravity) : 0.0;
  a.row(12) = closure_row(closure, vertical_direction(gravity), ratio);

  const Eigen::PartialPivLU<Matrix13d> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond * kSingularCondition > 1.0)) {
    std::ostringstream msg;
    msg << "statics system is singular (condition estimate "
        << (rcond > 0.0 ? 1.0 / rcond : INFINITY) << ") under " << closure_name(closure)
        << " closure";
    throw SingularConfiguration(msg.str(), rcond > 0.0 ? 1.0 / rcond : INFINITY);
  }
  const Vector13d x = lu.solve(b);

  ReactionSolution sol;
  sol.shoulder_force = x.segment<3>(kShoulder);
  sol.elbow_force = x.segment<3>(kElbow);
  sol.elbow_torque = x[kElbowTorque];
  sol.wrench.head<3>() = x.segment<3>(kForce);
  sol.wrench.tail<3>() = x.segment<3>(kTorque);
  return sol;
}

Eigen::Matrix<double, 12, 1> equilibrium_residual(const HumanArmModel& model,
                                                  const HumanArmState& theta,
                                                  const Eigen::Vector3d& gravity,
                                                  const ReactionSolution& sol) {
  const LinkGeometry g = link_geometry(model, theta);
  const Eigen::Vector3d w_upper = model.upper_arm_mass * gravity;
  const Eigen::Vector3d w_lower = model.lower_arm_mass * gravity;
  const Eigen::Vector3d torque = sol.elbow_torque * g.torque_axis;
  const Eigen::Vector3d f = sol.wrench.head<3>();
  const Eigen::Vector3d t = sol.wrench.tail<3>();

  Eigen::Matrix<double, 12, 1> r;
  r.segment<3>(0) = sol.shoulder_force + sol.elbow_force + w_upper;
  r.segment<3>(3) = (g.elbow - g.shoulder).cross(sol.elbow_force) +
                    (g.upper_com - g.shoulder).cross(w_upper) + torque;
  r.segment<3>(6) = -sol.elbow_force + f + w_lower;
  r.segment<3>(9) =
      (g.grasp - g.elbow).cross(f) + t + (g.lower_com - g.elbow).cross(w_lower) - torque;
  return r;
}

double closure_residual(const HumanArmModel& model, const HumanArmState& theta,
                        const Eigen::Vector3d& gravity, ClosureModel closure,
                        const ReactionSolution& sol) {
  const Eigen::Vector3d up = vertical_direction(gravity);
  const double rz1 = up.dot(sol.shoulder_force);
  const double rz2 = up.dot(sol.elbow_force);
  switch (closure) {
    case ClosureModel::kShoulderRelief: return rz1;
    case ClosureModel::kElbowRelief: return rz2;
    case ClosureModel::kBalanced: return rz1 - balanced_ratio(model, theta, gravity) * rz2;
  }
  return 0.0;
}

SafetyReport check_safety(const ReactionSolution& sol, const SafetyLimits& limits) {
  SafetyReport report;
  const double fs = sol.shoulder_force.norm();
  const double fe = sol.elbow_force.norm();
  const double te = std::abs(sol.elbow_torque);
  report.shoulder_force_margin = limits.shoulder_force_max - fs;
  report.elbow_force_margin = limits.elbow_force_max - fe;
  report.elbow_torque_margin = limits.elbow_torque_max - te;
  if (!(fs < limits.shoulder_force_max)) report.violations.push_back("shoulder_force");
  if (!(fe < limits.elbow_force_max)) report.violations.push_back("elbow_force");
  if (!(te < limits.elbow_torque_max)) report.violations.push_back("elbow_torque");
  report.safe = report.violations.empty();
  return report;
}

double yield_force(double sigma_yield, double area) { return sigma_yield * area; }

PlanarFbdSolution solve_planar_fbd(double link_mass, double link_length, double theta_a,
                                   double theta_b, double f_x, double g) {
  const double angle = theta_a + theta_b;
  const double weight = link_mass * g;
  PlanarFbdSolution s;
  s.r_y = 0.0;
  s.r_x = weight * std::sin(angle) - f_x;
  s.f_y = -s.r_y - weight * std::cos(angle);
  s.t_z = -link_length * s.f_y - 0.5 * link_length * weight * std::cos(angle);
  return s;
}

}  // namespace limbplan
