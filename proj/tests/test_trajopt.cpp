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
#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "limbplan/trajopt.hpp"
#include "oracles.hpp"

using namespace limbplan;

namespace {

const std::string kSource = LIMBPLAN_SOURCE_DIR;

HumanWaypoints random_walk(const HumanArmModel& m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> step(0.0, 0.05);
  HumanWaypoints w{oracle::random_state(m, rng)};
  for (int i = 1; i < n; ++i) {
    HumanArmState next = w.back();
    for (int k = 0; k < kHumanDofs; ++k) next[k] = m.joint_limits[k].clamp(next[k] + step(rng));
    w.push_back(next);
  }
  return w;
}

}  // namespace

TEST_CASE("subset resampling never lengthens the path") {
  const HumanArmModel m;
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const HumanWaypoints w = random_walk(m, 20 + trial % 60, rng);
    const int count = 2 + trial % 19;
    const HumanWaypoints r = resample_path(w, count);
    REQUIRE(static_cast<int>(r.size()) == count);
    CHECK(r.front() == w.front());
    CHECK(r.back() == w.back());
    // Strictly increasing indices into the input.
    std::size_t at = 0;
    for (const auto& s : r) {
      while (at < w.size() && w[at] != s) ++at;
      CHECK(at < w.size());
      ++at;
    }
    const PathLengths a = path_lengths(m, w), b = path_lengths(m, r);
    CHECK(b.position <= a.position + 1e-12);
    CHECK(b.orientation <= a.orientation + 1e-12);
  }
}

TEST_CASE("upsampling interpolates at uniform joint-space arc length") {
  HumanWaypoints w(2, HumanArmState::Zero());
  w[1] << 1.0, 0.0, 0.0, 0.0, 0.0;
  const HumanWaypoints r = resample_path(w, 5);
  REQUIRE(r.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(r[k][0] == doctest::Approx(0.25 * k));
  CHECK(resample_path(HumanWaypoints(1, HumanArmState::Ones()), 3).size() == 3);
}

TEST_CASE("local finite-difference gradient equals the full-cost gradient") {
  const HumanArmModel m;
  std::mt19937_64 rng(52);
  const HumanWaypoints w = random_walk(m, 12, rng);
  const double h = 1e-6;
  const HumanWaypoints g = finite_diff_gradient(m, w, 1.0, 0.7, h);
  CHECK(g.front().norm() == 0.0);
  CHECK(g.back().norm() == 0.0);
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    for (int k = 0; k < kHumanDofs; ++k) {
      HumanWaypoints p = w, q = w;
      p[i][k] += h;
      q[i][k] -= h;
      const double full = (oracle::path_cost(m, p, 1.0, 0.7) - oracle::path_cost(m, q, 1.0, 0.7)) / (2 * h);
      CHECK(g[i][k] == doctest::Approx(full).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("refinement keeps endpoints, validity and both lengths") {
  for (const char* name : {"lift_sphere", "lift_bar", "reach_sphere"}) {
    Scenario s = load_scenario_file(kSource + "/tests/data/" + name + ".json");
    const HumanPath coarse = plan(s);
    const RefinedTrajectory r = refine(s, coarse);
    REQUIRE(r.valid);
    CHECK(static_cast<int>(r.waypoints.size()) == s.n_waypoints);
    CHECK(r.waypoints.front() == s.theta_start);
    CHECK(r.waypoints.back() == s.theta_goal);
    CHECK(path_valid(s, r.waypoints));
    const PathLengths before = path_lengths(s.human, r.initial);
    const PathLengths after = path_lengths(s.human, r.waypoints);
    CHECK(after.position <= before.position);
    CHECK(after.orientation <= before.orientation);
    CHECK(r.cost <= path_cost(s.human, r.initial, 1.0, 1.0));
    CHECK(r.cost == doctest::Approx(path_cost(s.human, r.waypoints, 1.0, 1.0)).epsilon(1e-12));
    REQUIRE(r.reactions.size() == r.waypoints.size());
    for (const auto& sol : r.reactions) CHECK(check_safety(sol, s.safety).safe);
  }
}

TEST_CASE("zero iterations returns the resampled input") {
  Scenario s = load_scenario_file(kSource + "/tests/data/lift_sphere.json");
  s.refine.max_iterations = 0;
  const HumanPath coarse = plan(s);
  const RefinedTrajectory r = refine(s, coarse);
  CHECK(r.iterations == 0);
  CHECK(r.waypoints == r.initial);
}
