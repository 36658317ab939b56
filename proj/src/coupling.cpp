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
#include "limbplan/coupling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "limbplan/collision.hpp"
#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

constexpr double kMaxIkStep = 0.2;  // rad per joint per iteration
constexpr double kIllConditioned = 1e10;

Eigen::MatrixXd rotate_jacobian(const Eigen::Matrix3d& r, const Eigen::MatrixXd& j) {
  Eigen::MatrixXd out(6, j.cols());
  out.topRows<3>() = r * j.topRows<3>();
  out.bottomRows<3>() = r * j.bottomRows<3>();
  return out;
}

double weighted_error(const Vector6d& e) { return e.head<3>().norm() + 0.1 * e.tail<3>().norm(); }

}  // namespace

Eigen::Isometry3d BasePose::to_isometry() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = values.head<3>();
  t.linear() = rotation_from_axis_angle(values.tail<3>());
  return t;
}

Pose placed_robot_fk(const RobotArmModel& robot, const BasePose& base, const Eigen::VectorXd& q) {
  return Pose::from_isometry(base.to_isometry() * robot_frames(robot, q).back());
}

Eigen::MatrixXd placed_robot_jacobian(const RobotArmModel& robot, const BasePose& base,
                                      const Eigen::VectorXd& q) {
  return rotate_jacobian(base.to_isometry().linear(), robot_jacobian(robot, q));
}

std::optional<Eigen::VectorXd> try_ik_solve(const RobotArmModel& robot, const BasePose& base,
                                            const Pose& target, const Eigen::VectorXd& q_init,
                                            const IkOptions& options) {
  if (!target.position.allFinite() || !target.orientation.allFinite()) return std::nullopt;
  if (q_init.size() != robot.n_joints()) return std::nullopt;
  const Eigen::Isometry3d base_t = base.to_isometry();
  const Eigen::Isometry3d goal = target.to_isometry();
  const int n = robot.n_joints();

  auto clamp = [&](Eigen::VectorXd q) {
    for (int j = 0; j < n; ++j) q[j] = robot.joint_limits[j].clamp(q[j]);
    return q;
  };
  auto error_at = [&](const Eigen::VectorXd& q) {
    return pose_error(base_t * robot_frames(robot, q).back(), goal);
  };

  Eigen::VectorXd q = clamp(q_init);
  Vector6d e = error_at(q);
  double lambda = 1e-2;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (e.head<3>().norm() < options.position_tolerance &&
        e.tail<3>().norm() < options.orientation_tolerance) {
      break;
    }
    const Eigen::MatrixXd j = rotate_jacobian(base_t.linear(), robot_jacobian(robot, q));
    const Matrix6d jjt = j * j.transpose() + lambda * lambda * Matrix6d::Identity();
    Eigen::VectorXd dq = j.transpose() * jjt.ldlt().solve(e);
    const double largest = dq.cwiseAbs().maxCoeff();
    if (largest > kMaxIkStep) dq *= kMaxIkStep / largest;
    const Eigen::VectorXd q_next = clamp(q + dq);
    const Vector6d e_next = error_at(q_next);
    if (weighted_error(e_next) < weighted_error(e)) {
      q = q_next;
      e = e_next;
      lambda = std::max(lambda * 0.5, 1e-6);
    } else {
      lambda = std::min(lambda * 4.0, 10.0);
    }
  }
  if (e.head<3>().norm() < options.accept_position &&
      e.tail<3>().norm() < options.accept_orientation) {
    return q;
  }
  return std::nullopt;
}

Eigen::VectorXd ik_solve(const RobotArmModel& robot, const BasePose& base, const Pose& target,
                         const Eigen::VectorXd& q_init, const IkOptions& options) {
  auto q = try_ik_solve(robot, base, target, q_init, options);
  if (!q) {
    throw IkDiverged("IK did not converge within " + std::to_string(options.max_iterations) +
                     " iterations");
  }
  return *q;
}

std::optional<CoupledTrajectory> couple_at_base(const Scenario& scenario,
                                                const HumanWaypoints& human_traj,
                                                const BasePose& base) {
  CoupledTrajectory traj;
  traj.base = base;
  traj.steps.reserve(human_traj.size());
  const Eigen::Isometry3d base_t = base.to_isometry();
  Eigen::VectorXd seed = scenario.robot.home;
  for (std::size_t i = 0; i < human_traj.size(); ++i) {
    CoupledStep step;
    step.theta = human_traj[i];
    step.grasp = human_fk(scenario.human, step.theta).grasp_pose;
    auto q = try_ik_solve(scenario.robot, base, step.grasp, seed);
    if (!q) return std::nullopt;
    if (i > 0 && (*q - seed).cwiseAbs().maxCoeff() >= scenario.base_sampling.max_joint_step) {
      return std::nullopt;
    }
    const RobotPlacement placement{*q, base_t};
    if (!state_free(scenario, step.theta, &placement)) return std::nullopt;
    try {
      step.reactions =
          solve_reactions(scenario.human, step.theta, scenario.gravity, scenario.closure);
    } catch (const SingularConfiguration&) {
      return std::nullopt;
    }
    step.wrench = step.reactions.wrench;
    step.q = *q;
    seed = *q;
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

BaseSamplingResult sample_base_pose(const Scenario& scenario, const HumanWaypoints& human_traj,
                                    std::mt19937_64& rng) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::normal_distribution<double> normal(0.0, 1.0);
  const Vector6d sigma = scenario.base_pose_cov_diag.cwiseSqrt();
  for (int s = 1; s <= scenario.base_sampling.max_samples; ++s) {
    BasePose base;
    for (int i = 0; i < 6; ++i) base.values[i] = scenario.base_pose_mean[i] + sigma[i] * normal(rng);
    if (auto traj = couple_at_base(scenario, human_traj, base)) {
      return {base, std::move(*traj), s};
    }
    if (std::chrono::duration<double>(Clock::now() - start).count() > scenario.time_budget.base) {
      throw NoFeasibleBase("no feasible robot base within the time budget (" +
                           std::to_string(s) + " samples)");
    }
  }
  throw NoFeasibleBase("no feasible robot base after " +
                       std::to_string(scenario.base_sampling.max_samples) + " samples");
}

Wrench robot_wrench_from_torques(const RobotArmModel& robot, const BasePose& base,
                                 const Eigen::VectorXd& q, const Eigen::VectorXd& tau) {
  if (tau.size() != robot.n_joints() || q.size() != robot.n_joints()) {
    throw std::invalid_argument("q and tau must have n_joints entries");
  }
  const Eigen::MatrixXd j = placed_robot_jacobian(robot, base, q);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(j.transpose(),
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  if (!(cond <= kIllConditioned)) {
    std::ostringstream msg;
    msg << "robot Jacobian is ill-conditioned (cond " << cond << ")";
    throw IllConditioned(msg.str());
  }
  return svd.solve(tau);
}

std::vector<ReactionSolution> replay_forces(const Scenario& scenario,
                                            const CoupledTrajectory& coupled,
                                            ClosureModel closure) {
  std::vector<ReactionSolution> out;
  out.reserve(coupled.steps.size());
  for (const auto& step : coupled.steps) {
    out.push_back(solve_reactions(scenario.human, step.theta, scenario.gravity, closure));
  }
  return out;
}

GraspResidual grasp_residual(const Scenario& scenario, const CoupledTrajectory& coupled) {
  GraspResidual r;
  for (const auto& step : coupled.steps) {
    const Pose human = human_fk(scenario.human, step.theta).grasp_pose;
    const Pose robot = placed_robot_fk(scenario.robot, coupled.base, step.q);
    r.position = std::max(r.position, (human.position - robot.position).norm());
    r.orientation = std::max(r.orientation, rotation_distance(human, robot));
  }
  return r;
}

}  // namespace limbplan
