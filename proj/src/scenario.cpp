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
#include "limbplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& key, const std::string& parent) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ScenarioError("missing required field '" + join(parent, key) + "'");
  return *v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError("field '" + path + "' must be a number");
  return v.get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> as_vector(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != static_cast<std::size_t>(N)) {
    throw ScenarioError("field '" + path + "' must be an array of " + std::to_string(N) +
                        " numbers");
  }
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) out[i] = as_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Eigen::VectorXd as_dynamic_vector(const json& v, const std::string& path) {
  if (!v.is_array()) throw ScenarioError("field '" + path + "' must be an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = as_number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

void read_number(const json& obj, const std::string& key, const std::string& parent,
                 double& out) {
  if (const json* v = find(obj, key)) out = as_number(*v, join(parent, key));
}

void read_int(const json& obj, const std::string& key, const std::string& parent, int& out) {
  if (const json* v = find(obj, key)) {
    if (!v->is_number_integer()) {
      throw ScenarioError("field '" + join(parent, key) + "' must be an integer");
    }
    out = v->get<int>();
  }
}

Interval as_interval(const json& v, const std::string& path) {
  const Eigen::Vector2d pair = as_vector<2>(v, path);
  return Interval{pair[0], pair[1]};
}

Pose as_pose(const json& v, const std::string& path) {
  if (!v.is_object()) throw ScenarioError("field '" + path + "' must be an object");
  Pose p;
  p.position = as_vector<3>(require(v, "position", path), join(path, "position"));
  if (const json* o = find(v, "orientation")) {
    p.orientation = normalize_axis_angle(as_vector<3>(*o, join(path, "orientation")));
  }
  return p;
}

HumanArmModel parse_human(const json& h) {
  const std::string path = "human";
  if (!h.is_object()) throw ScenarioError("field 'human' must be an object");
  HumanArmModel m;
  m.upper_arm_radius = as_number(require(h, "upper_arm_radius", path), "human.upper_arm_radius");
  m.upper_arm_length = as_number(require(h, "upper_arm_length", path), "human.upper_arm_length");
  m.upper_arm_mass = as_number(require(h, "upper_arm_mass", path), "human.upper_arm_mass");
  m.lower_arm_radius = as_number(require(h, "lower_arm_radius", path), "human.lower_arm_radius");
  m.lower_arm_length = as_number(require(h, "lower_arm_length", path), "human.lower_arm_length");
  m.lower_arm_mass = as_number(require(h, "lower_arm_mass", path), "human.lower_arm_mass");
  m.grasp_offset = m.lower_arm_length;
  read_number(h, "grasp_offset", path, m.grasp_offset);
  if (const json* v = find(h, "shoulder_origin")) {
    m.shoulder_origin = as_pose(*v, "human.shoulder_origin");
  }
  if (const json* v = find(h, "joint_limits")) {
    if (!v->is_array() || v->size() != kHumanDofs) {
      throw ScenarioError("field 'human.joint_limits' must list 5 [lower, upper] pairs");
    }
    for (int j = 0; j < kHumanDofs; ++j) {
      m.joint_limits[j] = as_interval((*v)[j], "human.joint_limits[" + std::to_string(j) + "]");
    }
  }
  if (const json* v = find(h, "grasp_orientation")) {
    m.grasp_orientation = as_vector<3>(*v, "human.grasp_orientation");
  }
  return m;
}

RobotArmModel parse_robot(const json& r) {
  const std::string path = "robot";
  if (!r.is_object()) throw ScenarioError("field 'robot' must be an object");
  RobotArmModel m = default_robot_model();
  if (const json* v = find(r, "link_frames")) {
    if (!v->is_array()) throw ScenarioError("field 'robot.link_frames' must be an array");
    m.link_frames.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const Eigen::Vector4d p =
          as_vector<4>((*v)[i], "robot.link_frames[" + std::to_string(i) + "]");
      m.link_frames.push_back(LinkFrame{p[0], p[1], p[2], p[3]});
    }
    // A custom chain invalidates the default limits, home and capsules unless
    // they are given too.
    if (m.link_frames.size() != 7) {
      m.joint_limits.clear();
      m.home.resize(0);
      m.collision_capsules.clear();
    }
  }
  if (const json* v = find(r, "joint_limits")) {
    if (!v->is_array()) throw ScenarioError("field 'robot.joint_limits' must be an array");
    m.joint_limits.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      m.joint_limits.push_back(
          as_interval((*v)[i], "robot.joint_limits[" + std::to_string(i) + "]"));
    }
  }
  if (const json* v = find(r, "tool")) m.tool = as_pose(*v, "robot.tool");
  if (const json* v = find(r, "home")) m.home = as_dynamic_vector(*v, "robot.home");
  if (const json* v = find(r, "collision_capsules")) {
    if (!v->is_array()) {
      throw ScenarioError("field 'robot.collision_capsules' must be an array");
    }
    m.collision_capsules.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string p = "robot.collision_capsules[" + std::to_string(i) + "]";
      const json& c = (*v)[i];
      if (!c.is_object()) throw ScenarioError("field '" + p + "' must be an object");
      CollisionCapsule cap;
      const json& frame = require(c, "frame", p);
      if (!frame.is_number_integer()) throw ScenarioError("field '" + p + ".frame' must be an integer");
      cap.frame = frame.get<int>();
      cap.a = as_vector<3>(require(c, "a", p), p + ".a");
      cap.b = as_vector<3>(require(c, "b", p), p + ".b");
      cap.radius = as_number(require(c, "radius", p), p + ".radius");
      m.collision_capsules.push_back(cap);
    }
  }
  return m;
}

Primitive parse_obstacle(const json& o, const std::string& path) {
  if (!o.is_object()) throw ScenarioError("field '" + path + "' must be an object");
  const json& type = require(o, "type", path);
  if (!type.is_string()) throw ScenarioError("field '" + path + ".type' must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "sphere") {
    return Sphere{as_vector<3>(require(o, "center", path), path + ".center"),
                  as_number(require(o, "radius", path), path + ".radius")};
  }
  if (kind == "capsule") {
    return Capsule{as_vector<3>(require(o, "a", path), path + ".a"),
                   as_vector<3>(require(o, "b", path), path + ".b"),
                   as_number(require(o, "radius", path), path + ".radius")};
  }
  if (kind == "halfspace") {
    return HalfSpace{as_vector<3>(require(o, "normal", path), path + ".normal"),
                     as_number(require(o, "offset", path), path + ".offset")};
  }
  throw ScenarioError("field '" + path + ".type' must be sphere, capsule or halfspace");
}

int line_of_offset(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
}

json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json pose_json(const Pose& p) {
  return {{"position", vec_json(p.position)}, {"orientation", vec_json(p.orientation)}};
}

}  // namespace

Vector6d Scenario::default_base_pose_mean() {
  Vector6d m;
  m << -0.05, -0.5, 0.0, 0.0, 0.0, 1.5708;
  return m;
}

Vector6d Scenario::default_base_pose_cov_diag() {
  Vector6d c;
  c << 0.01, 0.0025, 1e-6, 1e-6, 1e-6, 0.07;
  return c;
}

void Scenario::validate() const {
  human.validate();
  robot.validate();
  safety.validate();
  // Endpoints outside the joint limits are the planner's InvalidEndpoint.
  if (!theta_start.allFinite() || !theta_goal.allFinite()) {
    throw ScenarioError("theta_start and theta_goal must be finite");
  }
  if (!gravity.allFinite()) throw ScenarioError("gravity must be finite");
  if (!std::isfinite(ground_height)) throw ScenarioError("ground_height must be finite");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string p = "obstacles[" + std::to_string(i) + "]";
    if (const auto* s = std::get_if<Sphere>(&obstacles[i]); s && !(s->radius > 0.0)) {
      throw ScenarioError(p + ".radius must be strictly positive");
    }
    if (const auto* c = std::get_if<Capsule>(&obstacles[i]); c && !(c->radius > 0.0)) {
      throw ScenarioError(p + ".radius must be strictly positive");
    }
    if (const auto* h = std::get_if<HalfSpace>(&obstacles[i]);
        h && std::abs(h->normal.norm() - 1.0) > 1e-9) {
      throw ScenarioError(p + ".normal must be unit length");
    }
  }
  if (!base_pose_mean.allFinite()) throw ScenarioError("base_pose_mean must be finite");
  for (int i = 0; i < 6; ++i) {
    if (!(base_pose_cov_diag[i] >= 0.0)) {
      throw ScenarioError("base_pose_cov_diag[" + std::to_string(i) + "] must be >= 0");
    }
  }
  if (!(cost_weights.position >= 0.0 && cost_weights.orientation >= 0.0)) {
    throw ScenarioError("cost_weights must be non-negative");
  }
  if (!(time_budget.plan > 0.0 && time_budget.refine > 0.0 && time_budget.base > 0.0)) {
    throw ScenarioError("time_budget_s entries must be strictly positive");
  }
  if (n_waypoints < 2) throw ScenarioError("n_waypoints must be >= 2");
  if (!(collision_margin >= 0.0)) throw ScenarioError("collision_margin must be >= 0");
  if (!(edge_resolution > 0.0)) throw ScenarioError("edge_resolution must be > 0");
  if (planner.batch_size < 1 || planner.max_batches < 1) {
    throw ScenarioError("planner.batch_size and planner.max_batches must be >= 1");
  }
  if (!(planner.goal_bias >= 0.0 && planner.goal_bias <= 1.0)) {
    throw ScenarioError("planner.goal_bias must lie in [0, 1]");
  }
  if (refine.max_iterations < 0 || !(refine.fd_step > 0.0)) {
    throw ScenarioError("refine.max_iterations must be >= 0 and refine.fd_step > 0");
  }
  if (base_sampling.max_samples < 1 || !(base_sampling.max_joint_step > 0.0)) {
    throw ScenarioError("base_sampling.max_samples must be >= 1 and max_joint_step > 0");
  }
}

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ScenarioError("parse error at line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (!doc.is_object()) throw ScenarioError("scenario document must be a JSON object");

  Scenario s;
  s.human = parse_human(require(doc, "human", ""));
  if (const json* v = find(doc, "robot")) s.robot = parse_robot(*v);
  s.theta_start = as_vector<kHumanDofs>(require(doc, "theta_start", ""), "theta_start");
  s.theta_goal = as_vector<kHumanDofs>(require(doc, "theta_goal", ""), "theta_goal");
  if (const json* v = find(doc, "gravity")) s.gravity = as_vector<3>(*v, "gravity");
  read_number(doc, "ground_height", "", s.ground_height);
  if (const json* v = find(doc, "obstacles")) {
    if (!v->is_array()) throw ScenarioError("field 'obstacles' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      s.obstacles.push_back(parse_obstacle((*v)[i], "obstacles[" + std::to_string(i) + "]"));
    }
  }
  if (const json* v = find(doc, "safety")) {
    if (!v->is_object()) throw ScenarioError("field 'safety' must be an object");
    read_number(*v, "shoulder_force_max", "safety", s.safety.shoulder_force_max);
    read_number(*v, "elbow_force_max", "safety", s.safety.elbow_force_max);
    read_number(*v, "elbow_torque_max", "safety", s.safety.elbow_torque_max);
  }
  if (const json* v = find(doc, "closure")) {
    const auto closure = v->is_string() ? parse_closure(v->get<std::string>()) : std::nullopt;
    if (!closure) {
      throw ScenarioError("field 'closure' must be balanced, shoulder_relief or elbow_relief");
    }
    s.closure = *closure;
  }
  if (const json* v = find(doc, "base_pose_mean")) {
    s.base_pose_mean = as_vector<6>(*v, "base_pose_mean");
  }
  if (const json* v = find(doc, "base_pose_cov_diag")) {
    s.base_pose_cov_diag = as_vector<6>(*v, "base_pose_cov_diag");
  }
  if (const json* v = find(doc, "cost_weights")) {
    if (!v->is_object()) throw ScenarioError("field 'cost_weights' must be an object");
    read_number(*v, "c_p", "cost_weights", s.cost_weights.position);
    read_number(*v, "c_o", "cost_weights", s.cost_weights.orientation);
  }
  if (const json* v = find(doc, "time_budget_s")) {
    if (v->is_number()) {
      const double t = v->get<double>();
      s.time_budget = TimeBudget{t, t, t};
    } else if (v->is_object()) {
      read_number(*v, "plan", "time_budget_s", s.time_budget.plan);
      read_number(*v, "refine", "time_budget_s", s.time_budget.refine);
      read_number(*v, "base", "time_budget_s", s.time_budget.base);
    } else {
      throw ScenarioError("field 'time_budget_s' must be a number or an object");
    }
  }
  if (const json* v = find(doc, "rng_seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      throw ScenarioError("field 'rng_seed' must be a non-negative integer");
    }
    s.rng_seed = v->get<std::uint64_t>();
  }
  read_int(doc, "n_waypoints", "", s.n_waypoints);
  read_number(doc, "collision_margin", "", s.collision_margin);
  read_number(doc, "edge_resolution", "", s.edge_resolution);
  if (const json* v = find(doc, "planner")) {
    read_int(*v, "batch_size", "planner", s.planner.batch_size);
    read_int(*v, "max_batches", "planner", s.planner.max_batches);
    read_number(*v, "goal_bias", "planner", s.planner.goal_bias);
  }
  if (const json* v = find(doc, "refine")) {
    read_int(*v, "max_iterations", "refine", s.refine.max_iterations);
    read_number(*v, "fd_step", "refine", s.refine.fd_step);
  }
  if (const json* v = find(doc, "base_sampling")) {
    read_int(*v, "max_samples", "base_sampling", s.base_sampling.max_samples);
    read_number(*v, "max_joint_step", "base_sampling", s.base_sampling.max_joint_step);
  }
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& s, int indent) {
  json h = {{"upper_arm_radius", s.human.upper_arm_radius},
            {"upper_arm_length", s.human.upper_arm_length},
            {"upper_arm_mass", s.human.upper_arm_mass},
            {"lower_arm_radius", s.human.lower_arm_radius},
            {"lower_arm_length", s.human.lower_arm_length},
            {"lower_arm_mass", s.human.lower_arm_mass},
            {"grasp_offset", s.human.grasp_offset},
            {"shoulder_origin", pose_json(s.human.shoulder_origin)},
            {"grasp_orientation", vec_json(s.human.grasp_orientation)}};
  json limits = json::array();
  for (const auto& l : s.human.joint_limits) limits.push_back({l.lower, l.upper});
  h["joint_limits"] = limits;

  json r;
  json frames = json::array();
  for (const auto& l : s.robot.link_frames) frames.push_back({l.a, l.alpha, l.d, l.theta_offset});
  r["link_frames"] = frames;
  json rlimits = json::array();
  for (const auto& l : s.robot.joint_limits) rlimits.push_back({l.lower, l.upper});
  r["joint_limits"] = rlimits;
  r["tool"] = pose_json(s.robot.tool);
  r["home"] = vec_json(s.robot.home);
  json caps = json::array();
  for (const auto& c : s.robot.collision_capsules) {
    caps.push_back({{"frame", c.frame}, {"a", vec_json(c.a)}, {"b", vec_json(c.b)},
                    {"radius", c.radius}});
  }
  r["collision_capsules"] = caps;

  json obstacles = json::array();
  for (const auto& o : s.obstacles) {
    if (const auto* sp = std::get_if<Sphere>(&o)) {
      obstacles.push_back({{"type", "sphere"}, {"center", vec_json(sp->center)},
                           {"radius", sp->radius}});
    } else if (const auto* c = std::get_if<Capsule>(&o)) {
      obstacles.push_back({{"type", "capsule"}, {"a", vec_json(c->a)}, {"b", vec_json(c->b)},
                           {"radius", c->radius}});
    } else if (const auto* hs = std::get_if<HalfSpace>(&o)) {
      obstacles.push_back({{"type", "halfspace"}, {"normal", vec_json(hs->normal)},
                           {"offset", hs->offset}});
    }
  }

  json doc = {
      {"human", h},
      {"robot", r},
      {"theta_start", vec_json(s.theta_start)},
      {"theta_goal", vec_json(s.theta_goal)},
      {"gravity", vec_json(s.gravity)},
      {"ground_height", s.ground_height},
      {"obstacles", obstacles},
      {"safety",
       {{"shoulder_force_max", s.safety.shoulder_force_max},
        {"elbow_force_max", s.safety.elbow_force_max},
        {"elbow_torque_max", s.safety.elbow_torque_max}}},
      {"closure", std::string(closure_name(s.closure))},
      {"base_pose_mean", vec_json(s.base_pose_mean)},
      {"base_pose_cov_diag", vec_json(s.base_pose_cov_diag)},
      {"cost_weights", {{"c_p", s.cost_weights.position}, {"c_o", s.cost_weights.orientation}}},
      {"time_budget_s",
       {{"plan", s.time_budget.plan}, {"refine", s.time_budget.refine},
        {"base", s.time_budget.base}}},
      {"rng_seed", s.rng_seed},
      {"n_waypoints", s.n_waypoints},
      {"collision_margin", s.collision_margin},
      {"edge_resolution", s.edge_resolution},
      {"planner",
       {{"batch_size", s.planner.batch_size},
        {"max_batches", s.planner.max_batches},
        {"goal_bias", s.planner.goal_bias}}},
      {"refine",
       {{"max_iterations", s.refine.max_iterations}, {"fd_step", s.refine.fd_step}}},
      {"base_sampling",
       {{"max_samples", s.base_sampling.max_samples},
        {"max_joint_step", s.base_sampling.max_joint_step}}},
  };
  return doc.dump(indent);
}

}  // namespace limbplan
