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

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace limbplan {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

// A rigid frame: position in metres plus an axis-angle rotation vector whose
// norm is the rotation angle. Constructed poses always carry an angle in
// [0, pi].
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d orientation = Eigen::Vector3d::Zero();

  Pose() = default;
  Pose(const Eigen::Vector3d& p, const Eigen::Vector3d& axis_angle);

  static Pose from_isometry(const Eigen::Isometry3d& transform);
  Eigen::Isometry3d to_isometry() const;
  Eigen::Matrix3d rotation() const;

  // Composition this * other (other expressed in this frame).
  Pose operator*(const Pose& other) const;
  Pose inverse() const;
};

// Wraps a rotation vector so that its norm lies in [0, pi].
Eigen::Vector3d normalize_axis_angle(const Eigen::Vector3d& v);

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& v);
Eigen::Vector3d axis_angle_from_rotation(const Eigen::Matrix3d& r);

// Angle of the relative rotation a * b^-1, in [0, pi].
double rotation_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);
double rotation_distance(const Pose& a, const Pose& b);

// 6-vector [dp; dw] taking `from` to `to`, both expressed in the common frame.
// The angular part is the rotation vector of to.R * from.R^T.
Vector6d pose_error(const Eigen::Isometry3d& from, const Eigen::Isometry3d& to);

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

}  // namespace limbplan
