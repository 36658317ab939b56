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
#include <random>
#include <string>

#include "doctest.h"
#include "limbplan/errors.hpp"
#include "limbplan/planner.hpp"
#include "oracles.hpp"

using namespace limbplan;

namespace {

const std::string kSource = LIMBPLAN_SOURCE_DIR;

Scenario lift_scenario() { return load_scenario_file(kSource + "/data/default_scenario.json"); }

Scenario blocked_scenario() {
  return load_scenario_file(kSource + "/tests/data/lift_sphere.json");
}

}  // namespace

TEST_CASE("path cost matches an independent rotation-composition oracle") {
  const HumanArmModel m;
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    HumanWaypoints w;
    for (int i = 0; i < 8; ++i) w.push_back(oracle::random_state(m, rng));
    const double cp = 0.5 + trial * 0.1, co = 2.0 - trial * 0.02;
    CHECK(path_cost(m, w, cp, co) == doctest::Approx(oracle::path_cost(m, w, cp, co)).epsilon(1e-9));
    const PathLengths l = path_lengths(m, w);
    CHECK(path_cost(m, w, cp, co) == doctest::Approx(cp * l.position + co * l.orientation).epsilon(1e-12));
  }
  CHECK(path_cost(m, {}, 1.0, 1.0) == 0.0);
  CHECK(path_cost(m, {HumanArmState::Zero()}, 1.0, 1.0) == 0.0);
}

TEST_CASE("edge interpolation respects the resolution and keeps endpoints") {
  HumanArmState a = HumanArmState::Zero(), b;
  b << 0.33, -0.1, 0.0, 0.2, 0.05;
  const HumanWaypoints e = interpolate_edge(a, b, 0.05);
  CHECK(e.front() == a);
  CHECK(e.back() == b);
  CHECK(e.size() == 8);  // ceil(0.33 / 0.05) = 7 steps
  for (std::size_t i = 1; i < e.size(); ++i) {
    CHECK((e[i] - e[i - 1]).cwiseAbs().maxCoeff() <= 0.05 + 1e-12);
  }
  CHECK(interpolate_edge(a, a, 0.05).size() == 2);
}

TEST_CASE("invalidity reasons") {
  const Scenario s = lift_scenario();
  CHECK_FALSE(invalidity_reason(s, s.theta_start).has_value());
  HumanArmState th = s.theta_start;
  th[3] = 3.0;
  CHECK(invalidity_reason(s, th)->find("limits") != std::string::npos);
  th = s.theta_start;
  th[0] = 0.0;
  CHECK(*invalidity_reason(s, th) == "singular statics configuration");
  th[0] = -0.8;
  CHECK(*invalidity_reason(s, th) == "in collision");
  Scenario relief = s;
  relief.closure = ClosureModel::kShoulderRelief;
  CHECK(invalidity_reason(relief, s.theta_start)->find("unsafe") != std::string::npos);
}

TEST_CASE("start equal to goal gives a zero-cost two-point path") {
  Scenario s = lift_scenario();
  s.theta_goal = s.theta_start;
  const HumanPath p = plan(s);
  REQUIRE(p.waypoints.size() == 2);
  CHECK(p.waypoints[0] == s.theta_start);
  CHECK(p.waypoints[1] == s.theta_start);
  CHECK(p.cost == 0.0);
}

TEST_CASE("invalid endpoints are reported") {
  Scenario s = lift_scenario();
  s.theta_goal[3] = 3.0;
  try {
    plan(s);
    FAIL("expected InvalidEndpoint");
  } catch (const InvalidEndpoint& e) {
    CHECK(e.which() == InvalidEndpoint::Which::kGoal);
    CHECK(std::string(e.what()).find("theta_goal") != std::string::npos);
  }
  s = lift_scenario();
  s.theta_start[0] = -0.8;
  try {
    plan(s);
    FAIL("expected InvalidEndpoint");
  } catch (const InvalidEndpoint& e) {
    CHECK(e.which() == InvalidEndpoint::Which::kStart);
  }
}

TEST_CASE("an unobstructed lift is solved by the direct edge") {
  const Scenario s = lift_scenario();
  const HumanPath p = plan(s);
  CHECK(p.waypoints.front() == s.theta_start);
  CHECK(p.waypoints.back() == s.theta_goal);
  CHECK(path_valid(s, p.waypoints));
  CHECK(p.cost == doctest::Approx(path_cost(s.human, p.waypoints, 1.0, 1.0)));
}

TEST_CASE("a blocked lift detours around the obstacle") {
  const Scenario s = blocked_scenario();
  CHECK_FALSE(edge_valid(s, s.theta_start, s.theta_goal));
  const HumanPath p = plan(s);
  CHECK(path_valid(s, p.waypoints));
  CHECK(p.waypoints.front() == s.theta_start);
  CHECK(p.waypoints.back() == s.theta_goal);
  for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
    CHECK((p.waypoints[i] - p.waypoints[i - 1]).cwiseAbs().maxCoeff() <= s.edge_resolution + 1e-12);
  }
  REQUIRE_FALSE(p.batch_costs.empty());
  for (std::size_t i = 1; i < p.batch_costs.size(); ++i) {
    CHECK(p.batch_costs[i] <= p.batch_costs[i - 1]);
  }
  CHECK(p.cost == doctest::Approx(p.batch_costs.back()));
}

TEST_CASE("the planner is deterministic for a fixed seed") {
  Scenario s = blocked_scenario();
  s.planner.max_batches = 3;
  const HumanPath a = plan(s);
  const HumanPath b = plan(s);
  REQUIRE(a.waypoints.size() == b.waypoints.size());
  for (std::size_t i = 0; i < a.waypoints.size(); ++i) CHECK(a.waypoints[i] == b.waypoints[i]);
  s.rng_seed += 1;
  const HumanPath c = plan(s);
  CHECK(path_valid(s, c.waypoints));
}

TEST_CASE("a goal sealed off by obstacles yields NoPathFound") {
  Scenario s = lift_scenario();
  s.planner.max_batches = 2;
  s.planner.batch_size = 50;
  // A shell of spheres around the raised hand; the goal itself stays clear.
  const Eigen::Vector3d g = human_frames(s.human, s.theta_goal).grasp.translation();
  const Eigen::Vector3d e = human_frames(s.human, s.theta_goal).elbow_point();
  for (const Eigen::Vector3d& d :
       {Eigen::Vector3d(0.2, 0, 0), Eigen::Vector3d(-0.2, 0, 0), Eigen::Vector3d(0, 0.2, 0),
        Eigen::Vector3d(0, -0.2, 0), Eigen::Vector3d(0, 0, 0.2)}) {
    s.obstacles.push_back(Sphere{g + d, 0.1});
  }
  s.obstacles.push_back(Sphere{e + Eigen::Vector3d(0.19, 0, 0), 0.08});
  s.obstacles.push_back(Sphere{e + Eigen::Vector3d(-0.19, 0, 0), 0.08});
  s.obstacles.push_back(Sphere{e + Eigen::Vector3d(0, 0.19, 0), 0.08});
  s.obstacles.push_back(Sphere{e + Eigen::Vector3d(0, -0.19, 0), 0.08});
  REQUIRE(is_valid(s, s.theta_goal));
  CHECK_THROWS_AS(plan(s), NoPathFound);
}
