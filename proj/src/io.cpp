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
#include "limbplan/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "limbplan/errors.hpp"

namespace limbplan {
namespace {

const char* const kGraspColumns[] = {"grasp_x", "grasp_y", "grasp_z",
                                     "grasp_ax", "grasp_ay", "grasp_az"};
const char* const kReactionColumns[] = {
    "fx", "fy", "fz", "tx", "ty", "tz", "shoulder_rx", "shoulder_ry", "shoulder_rz",
    "elbow_rx", "elbow_ry", "elbow_rz", "elbow_t"};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> theta_columns() {
  std::vector<std::string> cols;
  for (int i = 1; i <= kHumanDofs; ++i) cols.push_back("theta" + std::to_string(i));
  return cols;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void append_reactions(std::vector<std::string>& row, const ReactionSolution& r) {
  for (int i = 0; i < 6; ++i) row.push_back(format_double(r.wrench[i]));
  for (int i = 0; i < 3; ++i) row.push_back(format_double(r.shoulder_force[i]));
  for (int i = 0; i < 3; ++i) row.push_back(format_double(r.elbow_force[i]));
  row.push_back(format_double(r.elbow_torque));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error("CSV line " + std::to_string(line) + ": " + what);
}

double parse_cell(const std::string& cell, int line) {
  if (cell.empty()) fail(line, "empty cell");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE) {
    fail(line, "not a number: '" + cell + "'");
  }
  return v;
}

ReactionSolution reactions_from(const std::vector<double>& v, std::size_t at) {
  ReactionSolution r;
  for (int i = 0; i < 6; ++i) r.wrench[i] = v[at + i];
  for (int i = 0; i < 3; ++i) r.shoulder_force[i] = v[at + 6 + i];
  for (int i = 0; i < 3; ++i) r.elbow_force[i] = v[at + 9 + i];
  r.elbow_torque = v[at + 12];
  return r;
}

// Reads the header and every row as numbers; checks the header against
// `expected` built from the detected joint count.
template <typename ExpectedFn>
std::vector<std::vector<double>> read_table(std::istream& in, ExpectedFn expected_for,
                                            int& n_joints) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) fail(1, "missing header");
  const std::vector<std::string> header = split(strip_cr(line));
  n_joints = 0;
  for (const auto& h : header) {
    if (h.size() > 1 && h[0] == 'q') ++n_joints;
  }
  if (header != expected_for(n_joints)) fail(1, "unexpected columns (csv version mismatch?)");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) {
      fail(line_no, "expected " + std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
    if (row[0] != static_cast<double>(rows.size())) fail(line_no, "step index out of sequence");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<std::string> trajectory_csv_columns(int n_joints) {
  std::vector<std::string> cols{"step"};
  for (auto& c : theta_columns()) cols.push_back(c);
  for (int i = 1; i <= n_joints; ++i) cols.push_back("q" + std::to_string(i));
  for (const char* c : kGraspColumns) cols.emplace_back(c);
  for (const char* c : kReactionColumns) cols.emplace_back(c);
  return cols;
}

std::vector<std::string> forces_csv_columns() {
  std::vector<std::string> cols{"step"};
  for (auto& c : theta_columns()) cols.push_back(c);
  for (const char* c : kReactionColumns) cols.emplace_back(c);
  return cols;
}

void write_trajectory_csv(std::ostream& out, const CoupledTrajectory& traj) {
  const int n_joints = traj.steps.empty() ? 0 : static_cast<int>(traj.steps.front().q.size());
  write_row(out, trajectory_csv_columns(n_joints));
  for (std::size_t s = 0; s < traj.steps.size(); ++s) {
    const CoupledStep& step = traj.steps[s];
    if (step.q.size() != n_joints) throw Error("inconsistent robot joint count across steps");
    std::vector<std::string> row{std::to_string(s)};
    for (int i = 0; i < kHumanDofs; ++i) row.push_back(format_double(step.theta[i]));
    for (int i = 0; i < n_joints; ++i) row.push_back(format_double(step.q[i]));
    for (int i = 0; i < 3; ++i) row.push_back(format_double(step.grasp.position[i]));
    for (int i = 0; i < 3; ++i) row.push_back(format_double(step.grasp.orientation[i]));
    ReactionSolution r = step.reactions;
    r.wrench = step.wrench;
    append_reactions(row, r);
    write_row(out, row);
  }
}

void write_forces_csv(std::ostream& out, const std::vector<HumanArmState>& thetas,
                      const std::vector<ReactionSolution>& reactions) {
  if (thetas.size() != reactions.size()) throw Error("thetas and reactions differ in length");
  write_row(out, forces_csv_columns());
  for (std::size_t s = 0; s < thetas.size(); ++s) {
    std::vector<std::string> row{std::to_string(s)};
    for (int i = 0; i < kHumanDofs; ++i) row.push_back(format_double(thetas[s][i]));
    append_reactions(row, reactions[s]);
    write_row(out, row);
  }
}

CoupledTrajectory read_trajectory_csv(std::istream& in) {
  int n_joints = 0;
  const auto rows = read_table(in, trajectory_csv_columns, n_joints);
  CoupledTrajectory traj;
  for (const auto& v : rows) {
    CoupledStep step;
    std::size_t at = 1;
    for (int i = 0; i < kHumanDofs; ++i) step.theta[i] = v[at++];
    step.q.resize(n_joints);
    for (int i = 0; i < n_joints; ++i) step.q[i] = v[at++];
    for (int i = 0; i < 3; ++i) step.grasp.position[i] = v[at++];
    for (int i = 0; i < 3; ++i) step.grasp.orientation[i] = v[at++];
    step.reactions = reactions_from(v, at);
    step.wrench = step.reactions.wrench;
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

ForcesTable read_forces_csv(std::istream& in) {
  int n_joints = 0;
  const auto rows =
      read_table(in, [](int) { return forces_csv_columns(); }, n_joints);
  ForcesTable table;
  for (const auto& v : rows) {
    HumanArmState theta;
    for (int i = 0; i < kHumanDofs; ++i) theta[i] = v[1 + i];
    table.thetas.push_back(theta);
    table.reactions.push_back(reactions_from(v, 1 + kHumanDofs));
  }
  return table;
}

CoupledTrajectory read_trajectory_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_trajectory_csv(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace limbplan
