// Copyright 2026 The cartan-cost Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (JSON, Pauli letters, split files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its contract (non-unitary input,
/// dimension mismatch, unsupported split...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach its tolerance. Carries the residual
/// that was achieved.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Results that violate an internal invariant, e.g. a KAK factor leaving
/// its subspace.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The path optimizer failed to meet its endpoint tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace cartan
