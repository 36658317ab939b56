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
#include "limbplan/trajopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTolerance = 1e-12;
constexpr int kStallWindow = 10;
constexpr double kStallRelative = 1e-6;

std::vector<double> arc_lengths(const HumanWaypoints& path) {
  std::vector<double> s(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) s[i] = s[i - 1] + (path[i] - path[i - 1]).norm();
  return s;
}

double local_cost(const HumanArmModel& model, const HumanWaypoints& w, std::size_t i,
                  const HumanArmState& theta, double c_p, double c_o) {
  const Eigen::Isometry3d here = human_frames(model, theta).grasp;
  double c = 0.0;
  if (i > 0) c += step_cost(human_frames(model, w[i - 1]).grasp, here, c_p, c_o);
  if (i + 1 < w.size()) c += step_cost(here, human_frames(model, w[i + 1]).grasp, c_p, c_o);
  return c;
}

}  // namespace

HumanWaypoints resample_path(const HumanWaypoints& path, int count) {
  const int n = static_cast<int>(path.size());
  if (n == 0 || count < 2) return path;
  if (n == 1) return HumanWaypoints(count, path.front());
  const std::vector<double> s = arc_lengths(path);
  const double total = s.back();
  HumanWaypoints out;
  out.reserve(count);

  if (n >= count) {
    int prev = 0;
    out.push_back(path.front());
    for (int k = 1; k < count - 1; ++k) {
      const int lo = prev + 1;
      const int hi = n - 1 - (count - 1 - k);
      int best = lo;
      if (total > 0.0) {
        const double target = total * k / (count - 1);
        const auto it = std::lower_bound(s.begin() + lo, s.begin() + hi + 1, target);
        int idx = static_cast<int>(it - s.begin());
        idx = std::clamp(idx, lo, hi);
        if (idx > lo && std::abs(s[idx - 1] - target) <= std::abs(s[idx] - target)) --idx;
        best = idx;
      } else {
        best = std::clamp(static_cast<int>(std::lround(static_cast<double>(k) * (n - 1) / (count - 1))), lo, hi);
      }
      out.push_back(path[best]);
      prev = best;
    }
    out.push_back(path.back());
    return out;
  }

  for (int k = 0; k < count; ++k) {
    if (k == count - 1) {
      out.push_back(path.back());
      break;
    }
    const double target = total * k / (count - 1);
    const auto it = std::upper_bound(s.begin(), s.end(), target);
    const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - s.begin()), 1, path.size() - 1);
    const double span = s[j] - s[j - 1];
    const double t = span > 0.0 ? (target - s[j - 1]) / span : 0.0;
    out.push_back(path[j - 1] + t * (path[j] - path[j - 1]));
  }
  return out;
}

HumanWaypoints finite_diff_gradient(const HumanArmModel& model, const HumanWaypoints& waypoints,
                                    double c_p, double c_o, double h) {
  HumanWaypoints grad(waypoints.size(), HumanArmState::Zero());
  for (std::size_t i = 1; i + 1 < waypoints.size(); ++i) {
    for (int k = 0; k < kHumanDofs; ++k) {
      HumanArmState plus = waypoints[i];
      HumanArmState minus = waypoints[i];
      plus[k] += h;
      minus[k] -= h;
      grad[i][k] = (local_cost(model, waypoints, i, plus, c_p, c_o) -
                    local_cost(model, waypoints, i, minus, c_p, c_o)) /
                   (2.0 * h);
    }
  }
  return grad;
}

RefinedTrajectory refine(const Scenario& scenario, const HumanPath& path) {
  const auto start_time = Clock::now();
  const HumanArmModel& human = scenario.human;
  const double c_p = scenario.cost_weights.position;
  const double c_o = scenario.cost_weights.orientation;
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start_time).count(); };

  RefinedTrajectory out;
  HumanWaypoints w = resample_path(path.waypoints, scenario.n_waypoints);
  // A subset can shortcut around an obstacle; the dense input is valid.
  if (!path_valid(scenario, w)) w = path.waypoints;
  out.initial = w;
  const std::size_t n = w.size();

  PathLengths lengths = path_lengths(human, w);
  double cost = c_p * lengths.position + c_o * lengths.orientation;
  std::vector<double> history{cost};
  double step = 0.0;

  for (int iter = 0; out.valid && iter < scenario.refine.max_iterations; ++iter) {
    if (elapsed() > scenario.time_budget.refine) break;
    HumanWaypoints grad = finite_diff_gradient(human, w, c_p, c_o, scenario.refine.fd_step);
    double max_grad = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      HumanArmState tangent = w[i + 1] - w[i - 1];
      const double tn = tangent.norm();
      if (tn > 0.0) {
        tangent /= tn;
        grad[i] -= grad[i].dot(tangent) * tangent;
      }
      max_grad = std::max(max_grad, grad[i].cwiseAbs().maxCoeff());
    }
    if (max_grad < 1e-12) break;
    if (step == 0.0) step = 0.02 / max_grad;

    bool accepted = false;
    while (step * max_grad > 1e-9) {
      HumanWaypoints candidate = w;
      std::vector<char> moved(n, 0);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        for (int k = 0; k < kHumanDofs; ++k) {
          candidate[i][k] = human.joint_limits[k].clamp(w[i][k] - step * grad[i][k]);
        }
        moved[i] = candidate[i] != w[i];
      }
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (moved[i] && !is_valid(scenario, candidate[i])) {
          candidate[i] = w[i];
          moved[i] = 0;
        }
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 1; i < n; ++i) {
          if (!moved[i - 1] && !moved[i]) continue;
          if (edge_valid(scenario, candidate[i - 1], candidate[i])) continue;
          for (std::size_t j : {i - 1, i}) {
            if (moved[j]) {
              candidate[j] = w[j];
              moved[j] = 0;
            }
          }
          changed = true;
        }
      }
      const PathLengths cand = path_lengths(human, candidate);
      const double cand_cost = c_p * cand.position + c_o * cand.orientation;
      if (cand_cost < cost - kTolerance && cand.position <= lengths.position &&
          cand.orientation <= lengths.orientation) {
        w = std::move(candidate);
        lengths = cand;
        cost = cand_cost;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    ++out.iterations;
    history.push_back(cost);
    const std::size_t m = history.size();
    if (m > kStallWindow) {
      const double before = history[m - 1 - kStallWindow];
      if (before - cost <= kStallRelative * std::max(before, 1e-300)) break;
    }
  }

  out.waypoints = std::move(w);
  out.cost = path_cost(human, out.waypoints, c_p, c_o);
  out.reactions.reserve(out.waypoints.size());
  for (const auto& theta : out.waypoints) {
    try {
      out.reactions.push_back(
          solve_reactions(human, theta, scenario.gravity, scenario.closure));
    } catch (const SingularConfiguration&) {
      out.valid = false;
      out.reactions.push_back(ReactionSolution{});
    }
  }
  out.run_time_s = elapsed();
  return out;
}

}  // namespace limbplan
