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
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "limbplan/coupling.hpp"

namespace limbplan {

// Bumped whenever a column is added, removed or reordered.
inline constexpr int kCsvVersion = 1;

// step, theta1..theta5, q1..qn, grasp_x..grasp_az, fx..tz,
// shoulder_rx..rz, elbow_rx..rz, elbow_t
std::vector<std::string> trajectory_csv_columns(int n_joints);
// As above without the q and grasp columns.
std::vector<std::string> forces_csv_columns();

// Values are printed with 17 significant digits, so reading back is exact.
void write_trajectory_csv(std::ostream& out, const CoupledTrajectory& traj);
void write_forces_csv(std::ostream& out, const std::vector<HumanArmState>& thetas,
                      const std::vector<ReactionSolution>& reactions);

// Inverse of write_trajectory_csv; the base pose is not stored and is left at
// zero. The joint count is taken from the header. Throws Error with the
// offending line number.
CoupledTrajectory read_trajectory_csv(std::istream& in);

struct ForcesTable {
  std::vector<HumanArmState> thetas;
  std::vector<ReactionSolution> reactions;
};
ForcesTable read_forces_csv(std::istream& in);

// Throw IoError when the file cannot be opened or written.
CoupledTrajectory read_trajectory_csv_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace limbplan
