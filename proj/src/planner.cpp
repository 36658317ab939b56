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
#include "limbplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "limbplan/collision.hpp"
#include "limbplan/errors.hpp"
#include "limbplan/statics.hpp"

namespace limbplan {
namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Vertex {
  HumanArmState theta;
  Eigen::Isometry3d grasp;
};

class Roadmap {
 public:
  Roadmap(const Scenario& scenario) : scenario_(scenario) {}

  int add(const HumanArmState& theta) {
    vertices_.push_back({theta, human_frames(scenario_.human, theta).grasp});
    return static_cast<int>(vertices_.size()) - 1;
  }

  const Vertex& operator[](int i) const { return vertices_[i]; }
  int size() const { return static_cast<int>(vertices_.size()); }

  double cost(int a, int b) const {
    return step_cost(vertices_[a].grasp, vertices_[b].grasp, scenario_.cost_weights.position,
                     scenario_.cost_weights.orientation);
  }

  // Symmetric k-nearest-neighbour graph in joint space.
  void rebuild(int k) {
    const int n = size();
    adjacency_.assign(n, {});
    std::vector<std::pair<double, int>> dist;
    for (int i = 0; i < n; ++i) {
      dist.clear();
      for (int j = 0; j < n; ++j) {
        if (j != i) dist.emplace_back((vertices_[i].theta - vertices_[j].theta).squaredNorm(), j);
      }
      const int kk = std::min<int>(k, static_cast<int>(dist.size()));
      std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
      for (int m = 0; m < kk; ++m) {
        adjacency_[i].push_back(dist[m].second);
        adjacency_[dist[m].second].push_back(i);
      }
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  // Edge status cache: 1 valid, 0 invalid, absent unknown.
  std::optional<bool> edge_status(int a, int b) const {
    auto it = edges_.find(key(a, b));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  bool check_edge(int a, int b) {
    if (auto s = edge_status(a, b)) return *s;
    const bool ok = edge_valid(scenario_, vertices_[a].theta, vertices_[b].theta);
    edges_[key(a, b)] = ok;
    return ok;
  }

  // A* from `start` to `goal` skipping edges known to be invalid.
  std::vector<int> shortest_path(int start, int goal) const {
    const int n = size();
    std::vector<double> g(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<char> closed(n, 0);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[start] = 0.0;
    open.emplace(cost(start, goal), start);
    while (!open.empty()) {
      const int u = open.top().second;
      open.pop();
      if (closed[u]) continue;
      closed[u] = 1;
      if (u == goal) break;
      for (int v : adjacency_[u]) {
        if (closed[v]) continue;
        if (auto s = edge_status(u, v); s && !*s) continue;
        const double candidate = g[u] + cost(u, v);
        if (candidate < g[v]) {
          g[v] = candidate;
          parent[v] = u;
          open.emplace(candidate + cost(v, goal), v);
        }
      }
    }
    if (!std::isfinite(g[goal])) return {};
    std::vector<int> path;
    for (int v = goal; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  static std::uint64_t key(int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
  }

  const Scenario& scenario_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_map<std::uint64_t, bool> edges_;
};

HumanWaypoints densify(const std::vector<HumanArmState>& vertices, double resolution) {
  HumanWaypoints out;
  out.push_back(vertices.front());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const HumanWaypoints edge = interpolate_edge(vertices[i - 1], vertices[i], resolution);
    out.insert(out.end(), edge.begin() + 1, edge.end());
  }
  return out;
}

}  // namespace

double step_cost(const Eigen::Isometry3d& a, const Eigen::Isometry3d& b, double c_p,
                 double c_o) {
  return c_p * (b.translation() - a.translation()).norm() +
         c_o * rotation_distance(b.linear(), a.linear());
}

PathLengths path_lengths(const HumanArmModel& model, const HumanWaypoints& waypoints) {
  PathLengths lengths;
  if (waypoints.size() < 2) return lengths;
  Eigen::Isometry3d prev = human_frames(model, waypoints.front()).grasp;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Eigen::Isometry3d cur = human_frames(model, waypoints[i]).grasp;
    lengths.position += (cur.translation() - prev.translation()).norm();
    lengths.orientation += rotation_distance(cur.linear(), prev.linear());
    prev = cur;
  }
  return lengths;
}

double path_cost(const HumanArmModel& model, const HumanWaypoints& waypoints, double c_p,
                 double c_o) {
  double total = 0.0;
  if (waypoints.size() < 2) return total;
  Eigen::Isometry3d prev = human_frames(model, waypoints.front()).grasp;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Eigen::Isometry3d cur = human_frames(model, waypoints[i]).grasp;
    total += step_cost(prev, cur, c_p, c_o);
    prev = cur;
  }
  return total;
}

std::optional<std::string> invalidity_reason(const Scenario& scenario,
                                             const HumanArmState& theta) {
  if (!theta.allFinite()) return "non-finite joint angles";
  for (int j = 0; j < kHumanDofs; ++j) {
    if (!scenario.human.joint_limits[j].contains(theta[j])) {
      return "joint " + std::to_string(j) + " outside its limits";
    }
  }
  if (!state_free(scenario, theta)) return "in collision";
  ReactionSolution sol;
  try {
    sol = solve_reactions(scenario.human, theta, scenario.gravity, scenario.closure);
  } catch (const SingularConfiguration&) {
    return "singular statics configuration";
  }
  const SafetyReport report = check_safety(sol, scenario.safety);
  if (!report.safe) return "unsafe joint reaction (" + report.violations.front() + ")";
  return std::nullopt;
}

bool is_valid(const Scenario& scenario, const HumanArmState& theta) {
  return !invalidity_reason(scenario, theta).has_value();
}

HumanWaypoints interpolate_edge(const HumanArmState& a, const HumanArmState& b,
                                double resolution) {
  const double span = (b - a).cwiseAbs().maxCoeff();
  const int steps = std::max(1, static_cast<int>(std::ceil(span / resolution - 1e-12)));
  HumanWaypoints out;
  out.reserve(steps + 1);
  for (int k = 0; k < steps; ++k) {
    out.push_back(a + (b - a) * (static_cast<double>(k) / steps));
  }
  out.push_back(b);
  return out;
}

bool edge_valid(const Scenario& scenario, const HumanArmState& a, const HumanArmState& b) {
  const HumanWaypoints states = interpolate_edge(a, b, scenario.edge_resolution);
  for (std::size_t k = 1; k + 1 < states.size(); ++k) {
    if (!is_valid(scenario, states[k])) return false;
  }
  return true;
}

bool path_valid(const Scenario& scenario, const HumanWaypoints& waypoints) {
  for (const auto& w : waypoints) {
    if (!is_valid(scenario, w)) return false;
  }
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (!edge_valid(scenario, waypoints[i - 1], waypoints[i])) return false;
  }
  return true;
}

HumanPath plan(const Scenario& scenario) {
  const auto start_time = Clock::now();
  if (auto reason = invalidity_reason(scenario, scenario.theta_start)) {
    throw InvalidEndpoint(InvalidEndpoint::Which::kStart, *reason);
  }
  if (auto reason = invalidity_reason(scenario, scenario.theta_goal)) {
    throw InvalidEndpoint(InvalidEndpoint::Which::kGoal, *reason);
  }

  const HumanArmModel& human = scenario.human;
  const double c_p = scenario.cost_weights.position;
  const double c_o = scenario.cost_weights.orientation;

  HumanPath result;
  auto finish = [&](const std::vector<HumanArmState>& vertices) {
    result.waypoints = densify(vertices, scenario.edge_resolution);
    result.cost = path_cost(human, result.waypoints, c_p, c_o);
    result.run_time_s = seconds_since(start_time);
    return result;
  };

  if ((scenario.theta_start - scenario.theta_goal).cwiseAbs().maxCoeff() == 0.0) {
    result.waypoints = {scenario.theta_start, scenario.theta_goal};
    result.cost = 0.0;
    result.run_time_s = seconds_since(start_time);
    return result;
  }

  Roadmap roadmap(scenario);
  const int start = roadmap.add(scenario.theta_start);
  const int goal = roadmap.add(scenario.theta_goal);
  const double lower_bound = roadmap.cost(start, goal);

  // The straight segment is optimal whenever it is valid.
  if (roadmap.check_edge(start, goal)) {
    result.batch_costs.push_back(lower_bound);
    return finish({scenario.theta_start, scenario.theta_goal});
  }

  std::mt19937_64 rng(scenario.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double kGoalSigma = 0.1;
  constexpr double kDim = kHumanDofs;
  const double k_rgg = std::numbers::e * (1.0 + 1.0 / kDim);

  std::vector<int> best_vertices;
  double best_cost = kInf;        // roadmap (vertex) cost
  double best_dense_cost = kInf;  // reported cost

  auto heuristic_through = [&](const Eigen::Isometry3d& grasp) {
    const Eigen::Isometry3d& s = roadmap[start].grasp;
    const Eigen::Isometry3d& g = roadmap[goal].grasp;
    return step_cost(s, grasp, c_p, c_o) + step_cost(grasp, g, c_p, c_o);
  };

  bool out_of_time = false;
  for (int batch = 0; batch < scenario.planner.max_batches && !out_of_time; ++batch) {
    int added = 0;
    const int max_attempts = 20 * scenario.planner.batch_size;
    for (int attempt = 0; attempt < max_attempts && added < scenario.planner.batch_size;
         ++attempt) {
      if ((attempt & 15) == 0 && seconds_since(start_time) > scenario.time_budget.plan) {
        out_of_time = true;
        break;
      }
      HumanArmState theta;
      if (unit(rng) < scenario.planner.goal_bias) {
        for (int j = 0; j < kHumanDofs; ++j) {
          theta[j] = human.joint_limits[j].clamp(scenario.theta_goal[j] + kGoalSigma * normal(rng));
        }
      } else {
        for (int j = 0; j < kHumanDofs; ++j) {
          const Interval& lim = human.joint_limits[j];
          theta[j] = lim.lower + unit(rng) * lim.width();
        }
      }
      if (std::isfinite(best_cost)) {
        const Eigen::Isometry3d grasp = human_frames(human, theta).grasp;
        if (heuristic_through(grasp) >= best_cost) continue;
      }
      if (!is_valid(scenario, theta)) continue;
      roadmap.add(theta);
      ++added;
    }
    result.iterations = batch + 1;

    const int n = roadmap.size();
    roadmap.rebuild(static_cast<int>(std::ceil(k_rgg * std::log(static_cast<double>(n)))));

    while (true) {
      const std::vector<int> path = roadmap.shortest_path(start, goal);
      if (path.empty()) break;
      bool all_valid = true;
      for (std::size_t i = 1; i < path.size(); ++i) {
        if (!roadmap.check_edge(path[i - 1], path[i])) {
          all_valid = false;
          break;
        }
      }
      if (!all_valid) continue;
      double c = 0.0;
      for (std::size_t i = 1; i < path.size(); ++i) c += roadmap.cost(path[i - 1], path[i]);
      if (c < best_cost) {
        std::vector<HumanArmState> thetas;
        for (int v : path) thetas.push_back(roadmap[v].theta);
        const double dense = path_cost(human, densify(thetas, scenario.edge_resolution), c_p, c_o);
        if (dense < best_dense_cost) {
          best_cost = c;
          best_dense_cost = dense;
          best_vertices = path;
        }
      }
      break;
    }
    result.batch_costs.push_back(best_dense_cost);
    if (best_cost <= lower_bound + 1e-12) break;
    if (seconds_since(start_time) > scenario.time_budget.plan) out_of_time = true;
  }

  if (best_vertices.empty()) {
    std::ostringstream msg;
    msg << "no valid path after " << result.iterations << " batches ("
        << roadmap.size() - 2 << " valid samples)";
    throw NoPathFound(msg.str());
  }
  std::vector<HumanArmState> thetas;
  for (int v : best_vertices) thetas.push_back(roadmap[v].theta);
  return finish(thetas);
}

}  // namespace limbplan
