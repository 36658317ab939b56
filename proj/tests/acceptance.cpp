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
// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "limbplan/coupling.hpp"
#include "limbplan/errors.hpp"
#include "limbplan/io.hpp"
#include "limbplan/pipeline.hpp"
#include "oracles.hpp"

using namespace limbplan;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kSource = LIMBPLAN_SOURCE_DIR;

// Tolerances.
constexpr double kEquilibriumTol = 1e-8;
constexpr double kClosureTol = 1e-10;
constexpr double kEquilibriumBudgetS = 10.0;
constexpr double kScenarioBudgetS = 30.0;
constexpr double kGraspPositionTol = 1e-3;
constexpr double kGraspAngleTol = 1e-2;
constexpr int kMaxBaseSamples = 1000;
constexpr double kJacobianRelTol = 1e-5;
constexpr double kWrenchRelTol = 1e-6;
constexpr double kWrenchMaxCond = 1e6;
constexpr double kFbdTol = 1e-12;

const char* const kAcceptanceScenarios[] = {"lift_open", "lift_sphere", "reach_twist", "lift_bar",
                                            "reach_sphere"};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

Scenario load(const std::string& relative) { return load_scenario_file(kSource + "/" + relative); }

// Worst grasp mismatch of a coupled trajectory by an FK replay that shares no
// code with the library.
std::pair<double, double> replay_residual(const Scenario& s, const CoupledTrajectory& t) {
  const Eigen::Matrix4d base =
      oracle::homogeneous(t.base.values.head<3>(), t.base.values.tail<3>());
  double pos = 0.0, ang = 0.0;
  for (const auto& step : t.steps) {
    const oracle::HumanPoints h = oracle::human_chain(s.human, step.theta);
    const oracle::Frame r = oracle::robot_tool(s.robot, step.q, base);
    pos = std::max(pos, (h.grasp - r.p).norm());
    ang = std::max(ang, oracle::angle_between(h.grasp_rotation, r.r));
  }
  return {pos, ang};
}

std::vector<std::pair<Scenario, CoupledTrajectory>> g_accepted;

Outcome equilibrium() {
  const HumanArmModel m;
  const Eigen::Vector3d g(0.0, 0.0, -9.81);
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  double worst_eq = 0.0, worst_closure = 0.0;
  int singular = 0;
  for (int i = 0; i < 1000; ++i) {
    const HumanArmState th = oracle::random_state(m, rng);
    for (ClosureModel c : kAllClosures) {
      try {
        const ReactionSolution s = solve_reactions(m, th, g, c);
        worst_eq = std::max(worst_eq, equilibrium_residual(m, th, g, s).lpNorm<Eigen::Infinity>());
        worst_closure = std::max(worst_closure, std::abs(closure_residual(m, th, g, c, s)));
      } catch (const SingularConfiguration&) {
        ++singular;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = worst_eq < kEquilibriumTol && worst_closure < kClosureTol &&
           elapsed < kEquilibriumBudgetS && singular == 0;
  o.detail = "max residual " + fmt("%.2e", worst_eq) + ", closure " + fmt("%.2e", worst_closure) +
             ", singular " + std::to_string(singular) + "/3000, " + fmt("%.2f s", elapsed);
  return o;
}

Outcome closure_comparison() {
  const Scenario s = load("data/default_scenario.json");
  const PipelineResult run = run_pipeline(s);
  if (!run.coupled) return {false, "reference lift not feasible: " + run.report.failure};
  g_accepted.emplace_back(s, *run.coupled);
  bool balanced_ok = true;
  bool relief_exceeds = false;
  std::string detail;
  for (ClosureModel c : kAllClosures) {
    const auto forces = replay_forces(s, *run.coupled, c);
    double fs = 0.0, fe = 0.0, te = 0.0;
    bool all_safe = true;
    for (std::size_t i = 0; i < forces.size(); ++i) {
      fs = std::max(fs, forces[i].shoulder_force.norm());
      fe = std::max(fe, forces[i].elbow_force.norm());
      te = std::max(te, std::abs(forces[i].elbow_torque));
      all_safe = all_safe && check_safety(forces[i], s.safety).safe;
      if (c == ClosureModel::kBalanced &&
          std::abs(closure_residual(s.human, run.coupled->steps[i].theta, s.gravity, c,
                                    forces[i])) > kClosureTol) {
        all_safe = false;
      }
    }
    if (c == ClosureModel::kBalanced) balanced_ok = all_safe;
    else relief_exceeds = relief_exceeds || !all_safe;
    detail += std::string(closure_name(c)) + " max |fs| " + fmt("%.1f", fs) + " |fe| " +
              fmt("%.1f", fe) + " |te| " + fmt("%.2g", te) + (all_safe ? " ok" : " EXCEEDS") +
              "; ";
  }
  const auto& th0 = run.coupled->steps.front().theta;
  const auto& th1 = run.coupled->steps.back().theta;
  detail += "lift elevation " + fmt("%.2f", th0[0]) + " -> " + fmt("%.2f rad", th1[0]);
  return {balanced_ok && relief_exceeds, detail};
}

Outcome refinement() {
  bool ok = true;
  std::string detail;
  for (const char* name : kAcceptanceScenarios) {
    const Scenario s = load(std::string("tests/data/") + name + ".json");
    const auto t0 = Clock::now();
    const PipelineResult run = run_pipeline(s);
    const double elapsed = seconds_since(t0);
    const RunReport& r = run.report;
    const bool this_ok = r.feasible && r.refined_position_length <= r.coarse_position_length &&
                         r.refined_orientation_length <= r.coarse_orientation_length &&
                         elapsed <= kScenarioBudgetS;
    ok = ok && this_ok;
    if (run.coupled) g_accepted.emplace_back(s, *run.coupled);
    detail += std::string(name) + " pos " + fmt("%.3f", r.coarse_position_length) + "->" +
              fmt("%.3f m", r.refined_position_length) + " ori " +
              fmt("%.3f", r.coarse_orientation_length) + "->" +
              fmt("%.3f rad", r.refined_orientation_length) + (r.feasible ? "" : " INFEASIBLE") +
              " " + fmt("%.1f s", elapsed) + (this_ok ? "" : " FAIL") + "; ";
  }
  return {ok, detail};
}

Outcome base_sampling() {
  Scenario s = load("data/default_scenario.json");
  Vector6d reference_cov;
  reference_cov << 0.01, 0.0025, 1e-6, 1e-6, 1e-6, 0.07;
  if (s.base_pose_cov_diag != reference_cov) return {false, "default scenario covariance differs"};
  s.base_sampling.max_samples = kMaxBaseSamples;
  const HumanPath coarse = plan(s);
  const RefinedTrajectory refined = refine(s, coarse);
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    std::mt19937_64 rng(seed);
    try {
      const BaseSamplingResult r = sample_base_pose(s, refined.waypoints, rng);
      g_accepted.emplace_back(s, r.trajectory);
      detail += "seed " + std::to_string(seed) + ": " + std::to_string(r.samples_tried) + " samples; ";
    } catch (const NoFeasibleBase& e) {
      ok = false;
      detail += "seed " + std::to_string(seed) + ": none; ";
    }
  }
  Scenario zero = s;
  zero.base_pose_cov_diag.setZero();
  std::mt19937_64 rng(7);
  try {
    const BaseSamplingResult r = sample_base_pose(zero, refined.waypoints, rng);
    g_accepted.emplace_back(zero, r.trajectory);
    const bool first = r.samples_tried == 1 && r.base.values == zero.base_pose_mean;
    ok = ok && first;
    detail += std::string("zero covariance: ") + (first ? "mean accepted on sample 1" : "NOT sample 1");
  } catch (const NoFeasibleBase&) {
    ok = false;
    detail += "zero covariance: mean infeasible";
  }
  return {ok, detail};
}

// Runs after the criteria that produce coupled trajectories.
Outcome grasp_tracking() {
  double pos = 0.0, ang = 0.0;
  std::size_t steps = 0;
  for (const auto& [s, t] : g_accepted) {
    const auto [p, a] = replay_residual(s, t);
    pos = std::max(pos, p);
    ang = std::max(ang, a);
    steps += t.steps.size();
  }
  const bool ok = !g_accepted.empty() && pos < kGraspPositionTol && ang < kGraspAngleTol;
  return {ok, std::to_string(g_accepted.size()) + " trajectories, " + std::to_string(steps) +
                  " steps, max position " + fmt("%.2e m", pos) + ", max angle " +
                  fmt("%.2e rad", ang)};
}

Outcome numerics() {
  std::mt19937_64 rng(1006);
  const HumanArmModel human;
  const RobotArmModel robot = default_robot_model();
  auto rel = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-12);
  };
  double human_err = 0.0, robot_err = 0.0;
  auto human_fk_oracle = [&](const HumanArmState& th) {
    const oracle::HumanPoints h = oracle::human_chain(human, th);
    return oracle::Frame{h.grasp, h.grasp_rotation};
  };
  auto robot_fk_oracle = [&](const Eigen::VectorXd& q) { return oracle::robot_tool(robot, q); };
  for (int i = 0; i < 1000; ++i) {
    const HumanArmState th = oracle::random_state(human, rng);
    human_err = std::max(human_err, rel(human_jacobian(human, th),
                                        oracle::fd_jacobian(human_fk_oracle, th, 1e-6)));
    const Eigen::VectorXd q = oracle::random_joints(robot, rng);
    robot_err = std::max(robot_err, rel(robot_jacobian(robot, q),
                                        oracle::fd_jacobian(robot_fk_oracle, q, 1e-6)));
  }

  std::normal_distribution<double> n(0.0, 1.0);
  double wrench_err = 0.0;
  int wrench_samples = 0;
  BasePose base;
  base.values << 0.1, -0.4, 0.0, 0.0, 0.0, 0.9;
  while (wrench_samples < 1000) {
    const Eigen::VectorXd q = oracle::random_joints(robot, rng);
    const Eigen::MatrixXd j = placed_robot_jacobian(robot, base, q);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    const auto& sv = svd.singularValues();
    if (sv[0] / sv[sv.size() - 1] >= kWrenchMaxCond) continue;
    Wrench w;
    for (int k = 0; k < 6; ++k) w[k] = n(rng);
    const Wrench back = robot_wrench_from_torques(robot, base, q, j.transpose() * w);
    wrench_err = std::max(wrench_err, (back - w).norm() / w.norm());
    ++wrench_samples;
  }

  // Hand-derived: m = 3 kg, L = 0.25 m, horizontal link, f_x = 0.
  const PlanarFbdSolution fbd = solve_planar_fbd(3.0, 0.25, 0.0, 0.0, 0.0);
  const double fbd_err = std::max({std::abs(fbd.f_y - -29.43), std::abs(fbd.t_z - 3.67875),
                                   std::abs(fbd.r_x), std::abs(fbd.r_y)});
  const bool ok = human_err < kJacobianRelTol && robot_err < kJacobianRelTol &&
                  wrench_err < kWrenchRelTol && fbd_err < kFbdTol;
  return {ok, "human J " + fmt("%.2e", human_err) + ", robot J " + fmt("%.2e", robot_err) +
                  ", wrench round trip " + fmt("%.2e", wrench_err) + ", planar FBD " +
                  fmt("%.1e", fbd_err)};
}

Outcome determinism() {
  const Scenario s = load("tests/data/lift_sphere.json");
  const auto dir = std::filesystem::temp_directory_path() /
                   ("limbplan_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> bytes;
  for (int run = 0; run < 2; ++run) {
    const PipelineResult r = run_pipeline(s);
    if (!r.coupled) return {false, "run " + std::to_string(run) + " infeasible"};
    std::ostringstream csv;
    write_trajectory_csv(csv, *r.coupled);
    const auto path = dir / ("trajectory_" + std::to_string(run) + ".csv");
    write_text_file(path, csv.str());
    std::ifstream in(path, std::ios::binary);
    bytes.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::filesystem::remove_all(dir);
  const bool same = bytes[0] == bytes[1] && !bytes[0].empty();
  return {same, std::to_string(bytes[0].size()) + " bytes, " + (same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Tracking (4) replays the trajectories produced by 2, 3 and 5.
  const std::vector<Criterion> order = {
      {1, "equilibrium property", equilibrium},
      {2, "closure comparison on the reference lift", closure_comparison},
      {3, "refinement on 5 seeded scenarios", refinement},
      {5, "base-pose rejection sampling", base_sampling},
      {4, "grasp-constraint tracking", grasp_tracking},
      {6, "numerical checks", numerics},
      {7, "determinism", determinism},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& c : order) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    lines.emplace_back(c.id, std::string(o.pass ? "PASS" : "FAIL") + "  criterion " +
                                 std::to_string(c.id) + " (" + c.name + "): " + o.detail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return all ? 0 : 1;
}
