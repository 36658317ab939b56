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

#include <optional>
#include <stdexcept>
#include <string>

namespace limbplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating scenario / model input. `line` is set for
// JSON syntax errors.
class ScenarioError : public Error {
 public:
  explicit ScenarioError(const std::string& what, std::optional<int> line = std::nullopt)
      : Error(what), line_(line) {}
  std::optional<int> line() const { return line_; }

 private:
  std::optional<int> line_;
};

// The 13x13 statics system is (numerically) singular at this configuration.
class SingularConfiguration : public Error {
 public:
  SingularConfiguration(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

class InvalidEndpoint : public Error {
 public:
  enum class Which { kStart, kGoal };
  InvalidEndpoint(Which which, const std::string& reason)
      : Error(std::string(which == Which::kStart ? "theta_start" : "theta_goal") +
              " is not valid: " + reason),
        which_(which) {}
  Which which() const { return which_; }

 private:
  Which which_;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class NoPathFound : public Error {
 public:
  using Error::Error;
};

class NoFeasibleBase : public Error {
 public:
  using Error::Error;
};

class IkDiverged : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace limbplan
