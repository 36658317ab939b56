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

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "limbplan/model.hpp"

namespace limbplan {

struct Sphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

struct Capsule {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

// The solid region {x : normal . x <= offset}; normal is unit length.
struct HalfSpace {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
};

using Primitive = std::variant<Sphere, Capsule, HalfSpace>;

// Signed clearance: > 0 separated, <= 0 touching or penetrating.
double distance(const Primitive& a, const Primitive& b);

// Squared distance between segments [p1, q1] and [p2, q2].
double segment_segment_distance_sq(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                                   const Eigen::Vector3d& p2, const Eigen::Vector3d& q2);

struct Scenario;

struct HumanCapsules {
  Capsule upper_arm;
  Capsule lower_arm;
};

HumanCapsules human_capsules(const HumanArmModel& model, const HumanArmFrames& frames);

struct RobotPlacement {
  Eigen::VectorXd q;
  Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
};

// Robot capsules in the common frame, each tagged with the frame it rides on.
std::vector<std::pair<int, Capsule>> robot_capsules(const RobotArmModel& model,
                                                    const RobotPlacement& placement);

// Clearance check of the human arm against the ground, the scenario obstacles
// and (when given) the robot. Adjacent human links are exempt from each other;
// robot capsules on the last link and tool are exempt from the forearm they
// grasp; capsules on the robot base frame are exempt from the ground.
bool state_free(const Scenario& scenario, const HumanArmState& theta,
                const RobotPlacement* robot = nullptr);
bool state_free(const Scenario& scenario, const HumanArmState& theta, double margin,
                const RobotPlacement* robot = nullptr);

}  // namespace limbplan
