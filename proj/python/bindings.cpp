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
// Python bindings for the main limbplan operations.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <string>

#include "limbplan/coupling.hpp"
#include "limbplan/errors.hpp"
#include "limbplan/io.hpp"
#include "limbplan/pipeline.hpp"

namespace py = pybind11;
using namespace limbplan;

namespace {

ClosureModel closure_from(const std::string& name) {
  const auto c = parse_closure(name);
  if (!c) throw py::value_error("unknown closure '" + name + "'");
  return *c;
}

Eigen::MatrixXd stack(const HumanWaypoints& w) {
  Eigen::MatrixXd m(w.size(), kHumanDofs);
  for (std::size_t i = 0; i < w.size(); ++i) m.row(i) = w[i].transpose();
  return m;
}

py::dict reactions_dict(const ReactionSolution& r) {
  py::dict d;
  d["shoulder_force"] = Eigen::Vector3d(r.shoulder_force);
  d["elbow_force"] = Eigen::Vector3d(r.elbow_force);
  d["elbow_torque"] = r.elbow_torque;
  d["wrench"] = Vector6d(r.wrench);
  return d;
}

py::dict pose_dict(const Pose& p) {
  py::dict d;
  d["position"] = p.position;
  d["orientation"] = p.orientation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_limbplan, m) {
  m.doc() = "Planning safe repositioning trajectories for a passive human arm.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ScenarioError>(m, "ScenarioError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<SingularConfiguration>(m, "SingularConfiguration", error.ptr());
  py::register_exception<InvalidEndpoint>(m, "InvalidEndpoint", error.ptr());
  py::register_exception<NoPathFound>(m, "NoPathFound", error.ptr());
  py::register_exception<NoFeasibleBase>(m, "NoFeasibleBase", error.ptr());
  py::register_exception<IkDiverged>(m, "IkDiverged", error.ptr());
  py::register_exception<IllConditioned>(m, "IllConditioned", error.ptr());

  py::class_<HumanArmModel>(m, "HumanArmModel")
      .def(py::init<>())
      .def_readwrite("upper_arm_radius", &HumanArmModel::upper_arm_radius)
      .def_readwrite("upper_arm_length", &HumanArmModel::upper_arm_length)
      .def_readwrite("upper_arm_mass", &HumanArmModel::upper_arm_mass)
      .def_readwrite("lower_arm_radius", &HumanArmModel::lower_arm_radius)
      .def_readwrite("lower_arm_length", &HumanArmModel::lower_arm_length)
      .def_readwrite("lower_arm_mass", &HumanArmModel::lower_arm_mass)
      .def_readwrite("grasp_offset", &HumanArmModel::grasp_offset)
      .def_readwrite("grasp_orientation", &HumanArmModel::grasp_orientation)
      .def("validate", &HumanArmModel::validate)
      .def("within_limits", &HumanArmModel::within_limits, py::arg("theta"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("human", &Scenario::human)
      .def_readwrite("theta_start", &Scenario::theta_start)
      .def_readwrite("theta_goal", &Scenario::theta_goal)
      .def_readwrite("gravity", &Scenario::gravity)
      .def_readwrite("rng_seed", &Scenario::rng_seed)
      .def_readwrite("n_waypoints", &Scenario::n_waypoints)
      .def_readwrite("base_pose_mean", &Scenario::base_pose_mean)
      .def_readwrite("base_pose_cov_diag", &Scenario::base_pose_cov_diag)
      .def_property(
          "closure", [](const Scenario& s) { return std::string(closure_name(s.closure)); },
          [](Scenario& s, const std::string& name) { s.closure = closure_from(name); })
      .def("validate", &Scenario::validate)
      .def("to_json", [](const Scenario& s) { return scenario_to_json(s); });

  m.def("load_scenario", [](const std::string& text) { return load_scenario(text); },
        py::arg("text"), "Parses and validates a scenario JSON document.");
  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));

  m.def(
      "human_fk",
      [](const HumanArmModel& model, const HumanArmState& theta) {
        const HumanFkResult fk = human_fk(model, theta);
        py::dict d;
        d["elbow"] = pose_dict(fk.elbow_pose);
        d["grasp"] = pose_dict(fk.grasp_pose);
        return d;
      },
      py::arg("model"), py::arg("theta"));
  m.def("human_jacobian", &human_jacobian, py::arg("model"), py::arg("theta"));

  m.def(
      "solve_reactions",
      [](const HumanArmModel& model, const HumanArmState& theta, const Eigen::Vector3d& gravity,
         const std::string& closure) {
        return reactions_dict(solve_reactions(model, theta, gravity, closure_from(closure)));
      },
      py::arg("model"), py::arg("theta"), py::arg("gravity") = Eigen::Vector3d(0, 0, -9.81),
      py::arg("closure") = "balanced");

  m.def(
      "path_cost",
      [](const HumanArmModel& model, const Eigen::MatrixXd& waypoints, double c_p, double c_o) {
        if (waypoints.cols() != kHumanDofs) throw py::value_error("waypoints must be N x 5");
        HumanWaypoints w;
        for (Eigen::Index i = 0; i < waypoints.rows(); ++i) w.push_back(waypoints.row(i).transpose());
        return path_cost(model, w, c_p, c_o);
      },
      py::arg("model"), py::arg("waypoints"), py::arg("c_p") = 1.0, py::arg("c_o") = 1.0);

  m.def(
      "plan",
      [](const Scenario& s) {
        const HumanPath p = plan(s);
        py::dict d;
        d["waypoints"] = stack(p.waypoints);
        d["cost"] = p.cost;
        d["batch_costs"] = p.batch_costs;
        return d;
      },
      py::arg("scenario"), "Coarse human-arm path; raises InvalidEndpoint or NoPathFound.");

  m.def(
      "robot_wrench_from_torques",
      [](const Scenario& s, const Vector6d& base, const Eigen::VectorXd& q,
         const Eigen::VectorXd& tau) {
        return Wrench(robot_wrench_from_torques(s.robot, BasePose{base}, q, tau));
      },
      py::arg("scenario"), py::arg("base"), py::arg("q"), py::arg("tau"));

  m.def(
      "run_pipeline",
      [](const Scenario& s) {
        PipelineResult r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(s);
        }
        py::dict d;
        d["report"] = py::module_::import("json").attr("loads")(report_to_json(r.report));
        d["coarse"] = stack(r.refined.initial);
        d["refined"] = stack(r.refined.waypoints);
        if (r.coupled) {
          Eigen::MatrixXd q(r.coupled->steps.size(), s.robot.n_joints());
          for (std::size_t i = 0; i < r.coupled->steps.size(); ++i) {
            q.row(i) = r.coupled->steps[i].q.transpose();
          }
          d["q"] = q;
          std::ostringstream csv;
          write_trajectory_csv(csv, *r.coupled);
          d["trajectory_csv"] = csv.str();
        } else {
          d["q"] = py::none();
          d["trajectory_csv"] = py::none();
        }
        return d;
      },
      py::arg("scenario"), "Plan, refine and couple; returns the report and trajectories.");

  m.attr("CSV_VERSION") = kCsvVersion;
}
