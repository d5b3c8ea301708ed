// Copyright 2026 The cfmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cfmimo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value violates one of its invariants.
class InvalidConfig : public Error {
 public:
  InvalidConfig(std::string field, const std::string& what)
      : Error("invalid config: " + field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped before reaching its tolerance.
/// Carries the best value found so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best, double error_bound)
      : Error(what), best_(best), error_bound_(error_bound) {}
  double best() const noexcept { return best_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_;
  double error_bound_;
};

/// Integrand does not decay (typically the approximate Laplace transform
/// used outside its convergence region).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// beta <= c: closed approximations are undefined for this configuration.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& what, double margin)
      : Error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// Something that should hold by construction did not (e.g. a clearly
/// negative variance). Indicates a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfmimo
