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
#include "limbplan/pose.hpp"

#include <cmath>
#include <numbers>

namespace limbplan {

Pose::Pose(const Eigen::Vector3d& p, const Eigen::Vector3d& axis_angle)
    : position(p), orientation(normalize_axis_angle(axis_angle)) {}

Pose Pose::from_isometry(const Eigen::Isometry3d& transform) {
  Pose out;
  out.position = transform.translation();
  out.orientation = axis_angle_from_rotation(transform.linear());
  return out;
}

Eigen::Isometry3d Pose::to_isometry() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = rotation();
  t.translation() = position;
  return t;
}

Eigen::Matrix3d Pose::rotation() const {
  return rotation_from_axis_angle(orientation);
}

Pose Pose::operator*(const Pose& other) const {
  return from_isometry(to_isometry() * other.to_isometry());
}

Pose Pose::inverse() const { return from_isometry(to_isometry().inverse()); }

Eigen::Vector3d normalize_axis_angle(const Eigen::Vector3d& v) {
  const double angle = v.norm();
  if (angle <= std::numbers::pi) return v;
  const Eigen::Vector3d axis = v / angle;
  double wrapped = std::fmod(angle, 2.0 * std::numbers::pi);
  if (wrapped > std::numbers::pi) return -(2.0 * std::numbers::pi - wrapped) * axis;
  return wrapped * axis;
}

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& v) {
  const double angle = v.norm();
  if (angle < 1e-300) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
}

Eigen::Vector3d axis_angle_from_rotation(const Eigen::Matrix3d& r) {
  Eigen::Quaterniond q(r);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double s = q.vec().norm();
  if (s < 1e-300) return Eigen::Vector3d::Zero();
  const double angle = 2.0 * std::atan2(s, q.w());
  return angle * q.vec() / s;
}

double rotation_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  Eigen::Quaterniond q(a * b.transpose());
  return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

double rotation_distance(const Pose& a, const Pose& b) {
  return rotation_distance(a.rotation(), b.rotation());
}

Vector6d pose_error(const Eigen::Isometry3d& from, const Eigen::Isometry3d& to) {
  Vector6d e;
  e.head<3>() = to.translation() - from.translation();
  e.tail<3>() = axis_angle_from_rotation(to.linear() * from.linear().transpose());
  return e;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

}  // namespace limbplan
