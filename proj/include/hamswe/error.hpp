//
//  hamswe: Hamiltonian finite-volume shallow water schemes on dual meshes.
//
//  Copyright 2026 The hamswe Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hamswe {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wrong field length, bad dimension, missing boundary data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Degenerate triangulation, obtuse triangle, non-convex diamond.
class MeshQualityError : public Error {
 public:
  MeshQualityError(const std::string& what, long edge = -1)
      : Error(what), edge_(edge) {}
  /// Offending edge index, or -1 when the failure is not edge-local.
  long edge() const noexcept { return edge_; }

 private:
  long edge_;
};

/// Malformed mesh or config file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Nonpositive thickness and similar violations of the state invariants.
class StateError : public Error {
 public:
  StateError(const std::string& what, std::size_t cell)
      : Error(what), cell_(cell) {}
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

/// Thickness went nonpositive during a time step.
class StabilityError : public StateError {
 public:
  using StateError::StateError;
};

/// The elliptic solver hit its iteration cap.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const noexcept {
    return history_;
  }

 private:
  std::vector<double> history_;
};

/// Inconsistent run configuration (e.g. missing boundary stencil).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Requested analysis is not defined for this mesh type.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace hamswe
