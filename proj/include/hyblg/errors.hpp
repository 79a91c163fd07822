// Copyright 2026 The hyblg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBLG_ERRORS_HPP
#define HYBLG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyblg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Trace of an unnormalized state fell below the normalization guard.
class TrajectoryExtinguished : public Error {
 public:
  TrajectoryExtinguished(double trace, std::string branch = {})
      : Error(make_message(trace, branch)), trace_(trace), branch_(std::move(branch)) {}

  double trace() const noexcept { return trace_; }
  const std::string& branch() const noexcept { return branch_; }

  /// Same error tagged with the measurement branch it occurred in.
  TrajectoryExtinguished with_branch(std::string branch) const {
    return TrajectoryExtinguished(trace_, std::move(branch));
  }

 private:
  static std::string make_message(double trace, const std::string& branch) {
    std::string msg = "trajectory extinguished: trace " + std::to_string(trace);
    if (!branch.empty()) msg += " in branch " + branch;
    return msg;
  }

  double trace_;
  std::string branch_;
};

/// Non-finite value appeared during time stepping.
class IntegrationDiverged : public Error {
 public:
  explicit IntegrationDiverged(std::size_t step)
      : Error("integration diverged at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class SingularCoefficients : public Error {
 public:
  using Error::Error;
};

class DegenerateRoots : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace hyblg

#endif  // HYBLG_ERRORS_HPP
