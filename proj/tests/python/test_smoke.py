# Copyright 2026 The limbplan Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests of the Python module."""

import csv
import io
import os
import subprocess
import tempfile

import numpy as np
import pytest

import limbplan

SOURCE = os.environ.get(
    "LIMBPLAN_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", ".."))
DEFAULT = os.path.join(SOURCE, "data", "default_scenario.json")


@pytest.fixture(scope="module")
def scenario():
  return limbplan.load_scenario_file(DEFAULT)


def test_fk_at_rest():
  model = limbplan.HumanArmModel()
  fk = limbplan.human_fk(model, np.zeros(5))
  np.testing.assert_allclose(fk["elbow"]["position"], [-0.22, 0.0, 0.15], atol=1e-12)
  assert limbplan.human_jacobian(model, np.zeros(5)).shape == (6, 5)


def test_reactions_and_closures(scenario):
  theta = np.array([0.1, 0.0, 0.0, 0.3, 0.0])
  balanced = limbplan.solve_reactions(scenario.human, theta)
  relief = limbplan.solve_reactions(scenario.human, theta, closure="shoulder_relief")
  assert np.linalg.norm(balanced["shoulder_force"]) < 150.0
  assert np.linalg.norm(relief["shoulder_force"]) > 150.0
  assert abs(relief["shoulder_force"][2]) < 1e-9
  with pytest.raises(limbplan.SingularConfiguration):
    limbplan.solve_reactions(scenario.human, np.array([0.0, 0.0, 0.0, 0.3, 0.0]))
  with pytest.raises(ValueError):
    limbplan.solve_reactions(scenario.human, theta, closure="nope")


def test_scenario_errors():
  with pytest.raises(limbplan.ScenarioError):
    limbplan.load_scenario('{"human": {}}')
  with pytest.raises(limbplan.IoError):
    limbplan.load_scenario_file("/nonexistent.json")
  assert issubclass(limbplan.NoPathFound, limbplan.Error)


def test_pipeline_end_to_end(scenario):
  result = limbplan.run_pipeline(scenario)
  report = result["report"]
  assert report["feasible"]
  assert report["csv_version"] == limbplan.CSV_VERSION
  refined = result["refined"]
  assert refined.shape == (scenario.n_waypoints, 5)
  assert result["q"].shape == (scenario.n_waypoints, 7)
  cost = limbplan.path_cost(scenario.human, refined)
  assert abs(cost - report["refined"]["cost"]) < 1e-9
  assert report["refined"]["position_length"] <= report["coarse"]["position_length"]
  rows = list(csv.reader(io.StringIO(result["trajectory_csv"])))
  assert len(rows) == scenario.n_waypoints + 1


def test_invalid_goal_raises(scenario):
  bad = limbplan.load_scenario(scenario.to_json())
  goal = bad.theta_goal.copy()
  goal[3] = 3.0
  bad.theta_goal = goal
  with pytest.raises(limbplan.InvalidEndpoint):
    limbplan.plan(bad)


def test_cli_forces_match_direct_solves(scenario):
  cli = os.environ.get("LIMBPLAN_CLI")
  if not cli:
    pytest.skip("LIMBPLAN_CLI not set")
  with tempfile.TemporaryDirectory() as out:
    subprocess.run([cli, "plan", "--scenario", DEFAULT, "--out", out], check=True,
                   capture_output=True)
    forces = subprocess.run(
        [cli, "forces", "--scenario", DEFAULT, "--trajectory",
         os.path.join(out, "trajectory.csv"), "--closure", "elbow_relief"],
        check=True, capture_output=True, text=True).stdout
  rows = list(csv.DictReader(io.StringIO(forces)))
  assert rows
  for row in rows:
    theta = np.array([float(row[f"theta{i}"]) for i in range(1, 6)])
    direct = limbplan.solve_reactions(scenario.human, theta, closure="elbow_relief")
    np.testing.assert_allclose(
        [float(row[k]) for k in ("shoulder_rx", "shoulder_ry", "shoulder_rz")],
        direct["shoulder_force"], rtol=0, atol=1e-12)
    np.testing.assert_allclose([float(row[k]) for k in ("fx", "fy", "fz", "tx", "ty", "tz")],
                               direct["wrench"], rtol=0, atol=1e-12)
    assert float(row["elbow_t"]) == pytest.approx(direct["elbow_torque"], abs=1e-12)


def test_wrench_mapping_is_linear(scenario):
  q = np.array([0.1, -0.6, 0.2, -2.2, 0.1, 1.7, 0.5])
  base = np.array([0.0, -0.5, 0.0, 0.0, 0.0, 1.0])
  np.testing.assert_allclose(
      limbplan.robot_wrench_from_torques(scenario, base, q, np.zeros(7)), np.zeros(6))
  tau = np.arange(7, dtype=float)
  w1 = limbplan.robot_wrench_from_torques(scenario, base, q, tau)
  w2 = limbplan.robot_wrench_from_torques(scenario, base, q, 2 * tau)
  np.testing.assert_allclose(w2, 2 * w1, rtol=1e-12, atol=1e-12)
