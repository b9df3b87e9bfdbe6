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

#include <functional>

#include "expgeo/convex.hpp"
#include "expgeo/types.hpp"

namespace expgeo {

struct DescentOptions {
  double gradient_tol = 1e-9;
  int max_iter = 10000;
  double armijo = 1e-4;
  int max_backtracks = 80;
};

struct DescentResult {
  Vector x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient descent with Barzilai-Borwein trial steps and Armijo
/// backtracking. Trial points leaving `domain` are pulled back with
/// `interior_clamp`. Stops when |grad| <= gradient_tol; returns the last
/// iterate with converged=false on max_iter or a failed line search.
DescentResult minimize(const std::function<double(const Vector&)>& objective,
                       const std::function<Vector(const Vector&)>& gradient,
                       const DomainSpec& domain, Vector start, const DescentOptions& options);

/// Damped Newton descent for smooth objectives that may be nonconvex.
/// Hessian eigenvalues are replaced by max(|lambda|, floor) so every step is
/// a descent direction; steps are capped in the max-norm and backtracked.
/// Same stopping rule and return contract as `minimize`.
DescentResult minimize_newton(const std::function<double(const Vector&)>& objective,
                              const std::function<Vector(const Vector&)>& gradient,
                              const std::function<Matrix(const Vector&)>& hessian,
                              const DomainSpec& domain, Vector start,
                              const DescentOptions& options);

}  // namespace expgeo
