// Copyright 2026 The expgeo Authors
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
#include <utility>

#include "expgeo/types.hpp"

namespace expgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the domain an operation requires. `argument()`
/// names the offending input.
class DomainError : public Error {
 public:
  DomainError(std::string argument, const std::string& what)
      : Error(argument + ": " + what), argument_(std::move(argument)) {}
  const std::string& argument() const { return argument_; }

 private:
  std::string argument_;
};

class UnboundedDualError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap. Carries the best iterate seen
/// and the final residual (gradient norm).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, Vector best = {})
      : Error(what), residual_(residual), best_(std::move(best)) {}
  double residual() const { return residual_; }
  const Vector& best_iterate() const { return best_; }

 private:
  double residual_;
  Vector best_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyDataError : public DataError {
 public:
  using DataError::DataError;
};

/// The ML mean landed on the boundary of the mean space.
class BoundaryError : public DataError {
 public:
  using DataError::DataError;
};

class HyperparamError : public Error {
 public:
  using Error::Error;
};

}  // namespace expgeo
