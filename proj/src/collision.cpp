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
#include "limbplan/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "limbplan/scenario.hpp"

namespace limbplan {
namespace {

constexpr double kEps = 1e-15;

double point_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                              const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double len_sq = ab.squaredNorm();
  double t = 0.0;
  if (len_sq > kEps) t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

struct DistanceVisitor {
  double operator()(const Sphere& s, const Sphere& t) const {
    return (s.center - t.center).norm() - s.radius - t.radius;
  }
  double operator()(const Sphere& s, const Capsule& c) const {
    return point_segment_distance(s.center, c.a, c.b) - s.radius - c.radius;
  }
  double operator()(const Capsule& c, const Sphere& s) const { return (*this)(s, c); }
  double operator()(const Capsule& c, const Capsule& d) const {
    return std::sqrt(segment_segment_distance_sq(c.a, c.b, d.a, d.b)) - c.radius - d.radius;
  }
  double operator()(const Sphere& s, const HalfSpace& h) const {
    return h.normal.dot(s.center) - h.offset - s.radius;
  }
  double operator()(const HalfSpace& h, const Sphere& s) const { return (*this)(s, h); }
  double operator()(const Capsule& c, const HalfSpace& h) const {
    return std::min(h.normal.dot(c.a), h.normal.dot(c.b)) - h.offset - c.radius;
  }
  double operator()(const HalfSpace& h, const Capsule& c) const { return (*this)(c, h); }
  double operator()(const HalfSpace& h, const HalfSpace& k) const {
    // Only exactly opposed half-spaces can be disjoint.
    if ((h.normal + k.normal).norm() > 1e-12) return -std::numeric_limits<double>::infinity();
    return -k.offset - h.offset;
  }
};

}  // namespace

double distance(const Primitive& a, const Primitive& b) {
  return std::visit(DistanceVisitor{}, a, b);
}

// Closest points of two segments, following the clamped parametric approach
// of Ericson, Real-Time Collision Detection, 5.1.9.
double segment_segment_distance_sq(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                                   const Eigen::Vector3d& p2, const Eigen::Vector3d& q2) {
  const Eigen::Vector3d d1 = q1 - p1;
  const Eigen::Vector3d d2 = q2 - p2;
  const Eigen::Vector3d r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) return r.squaredNorm();
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom > kEps * a * e) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + s * d1) - (p2 + t * d2)).squaredNorm();
}

HumanCapsules human_capsules(const HumanArmModel& model, const HumanArmFrames& frames) {
  return {Capsule{frames.shoulder_point(), frames.elbow_point(), model.upper_arm_radius},
          Capsule{frames.elbow_point(), frames.wrist, model.lower_arm_radius}};
}

std::vector<std::pair<int, Capsule>> robot_capsules(const RobotArmModel& model,
                                                    const RobotPlacement& placement) {
  const auto frames = robot_frames(model, placement.q);
  std::vector<std::pair<int, Capsule>> out;
  out.reserve(model.collision_capsules.size());
  for (const auto& c : model.collision_capsules) {
    const Eigen::Isometry3d t = placement.base * frames[c.frame];
    out.emplace_back(c.frame, Capsule{t * c.a, t * c.b, c.radius});
  }
  return out;
}

bool state_free(const Scenario& scenario, const HumanArmState& theta,
                const RobotPlacement* robot) {
  return state_free(scenario, theta, scenario.collision_margin, robot);
}

bool state_free(const Scenario& scenario, const HumanArmState& theta, double margin,
                const RobotPlacement* robot) {
  const HumanArmFrames frames = human_frames(scenario.human, theta);
  const HumanCapsules arm = human_capsules(scenario.human, frames);
  const HalfSpace ground{vertical_direction(scenario.gravity), scenario.ground_height};
  const Primitive upper = arm.upper_arm;
  const Primitive lower = arm.lower_arm;

  for (const Primitive& link : {upper, lower}) {
    if (distance(link, ground) <= margin) return false;
    for (const Primitive& obstacle : scenario.obstacles) {
      if (distance(link, obstacle) <= margin) return false;
    }
  }
  if (robot == nullptr) return true;

  const int n = scenario.robot.n_joints();
  for (const auto& [frame, capsule] : robot_capsules(scenario.robot, *robot)) {
    const Primitive body = capsule;
    if (frame > 0 && distance(body, ground) <= margin) return false;
    for (const Primitive& obstacle : scenario.obstacles) {
      if (distance(body, obstacle) <= margin) return false;
    }
    if (distance(body, upper) <= margin) return false;
    if (frame < n && distance(body, lower) <= margin) return false;
  }
  return true;
}

}  // namespace limbplan
