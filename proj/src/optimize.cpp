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

#include "expgeo/optimize.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace expgeo {

DescentResult minimize(const std::function<double(const Vector&)>& objective,
                       const std::function<Vector(const Vector&)>& gradient,
                       const DomainSpec& domain, Vector start, const DescentOptions& options) {
  DescentResult result;
  Vector x = domain.contains(start) ? std::move(start) : domain.interior_clamp(start);
  double fx = objective(x);
  Vector g = gradient(x);
  double gnorm = g.norm();
  double step = 1.0 / std::max(1.0, gnorm);

  int iter = 0;
  for (; iter < options.max_iter && gnorm > options.gradient_tol; ++iter) {
    bool accepted = false;
    double trial = step;
    for (int bt = 0; bt < options.max_backtracks; ++bt, trial *= 0.5) {
      Vector cand = x - trial * g;
      if (!domain.contains(cand)) cand = domain.interior_clamp(cand);
      if (!domain.contains(cand)) continue;
      const double fc = objective(cand);
      if (!std::isfinite(fc)) continue;
      const double decrease = g.dot(cand - x);
      Vector gc = gradient(cand);
      const double gc_norm = gc.norm();
      const bool armijo = fc <= fx + options.armijo * decrease;
      // Near the optimum the objective is flat to rounding; accept steps that
      // shrink the gradient without a measurable increase.
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(fx));
      const bool flat = fc <= fx + noise && gc_norm < gnorm;
      if (!armijo && !flat) continue;

      const Vector s = cand - x;
      const Vector y = gc - g;
      const double sy = s.dot(y);
      step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * trial;
      if (!std::isfinite(step) || step <= 0.0) step = trial;
      x = std::move(cand);
      fx = fc;
      g = std::move(gc);
      gnorm = gc_norm;
      accepted = true;
      break;
    }
    if (!accepted) break;
  }

  result.x = std::move(x);
  result.value = fx;
  result.gradient_norm = gnorm;
  result.iterations = iter;
  result.converged = gnorm <= options.gradient_tol;
  return result;
}

DescentResult minimize_newton(const std::function<double(const Vector&)>& objective,
                              const std::function<Vector(const Vector&)>& gradient,
                              const std::function<Matrix(const Vector&)>& hessian,
                              const DomainSpec& domain, Vector start,
                              const DescentOptions& options) {
  constexpr double kRelativeFloor = 1e-10;
  constexpr double kMaxStep = 10.0;
  DescentResult result;
  Vector x = domain.contains(start) ? std::move(start) : domain.interior_clamp(start);
  double fx = objective(x);
  Vector g = gradient(x);
  double gnorm = g.norm();

  int iter = 0;
  for (; iter < options.max_iter && gnorm > options.gradient_tol; ++iter) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian(x));
    Vector values = eig.eigenvalues().cwiseAbs();
    const double floor = kRelativeFloor * std::max(1.0, values.maxCoeff());
    values = values.cwiseMax(floor);
    Vector direction = -(eig.eigenvectors() *
                         (eig.eigenvectors().transpose() * g).cwiseQuotient(values));
    const double longest = direction.cwiseAbs().maxCoeff();
    if (longest > kMaxStep) direction *= kMaxStep / longest;

    bool accepted = false;
    double trial = 1.0;
    for (int bt = 0; bt < options.max_backtracks; ++bt, trial *= 0.5) {
      Vector cand = x + trial * direction;
      if (!domain.contains(cand)) cand = domain.interior_clamp(cand);
      if (!domain.contains(cand)) continue;
      const double fc = objective(cand);
      if (!std::isfinite(fc)) continue;
      Vector gc = gradient(cand);
      const double gc_norm = gc.norm();
      const bool armijo = fc <= fx + options.armijo * g.dot(cand - x);
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(fx));
      const bool flat = fc <= fx + noise && gc_norm < gnorm;
      if (!armijo && !flat) continue;
      x = std::move(cand);
      fx = fc;
      g = std::move(gc);
      gnorm = gc_norm;
      accepted = true;
      break;
    }
    if (!accepted) break;
  }

  result.x = std::move(x);
  result.value = fx;
  result.gradient_norm = gnorm;
  result.iterations = iter;
  result.converged = gnorm <= options.gradient_tol;
  return result;
}

}  // namespace expgeo
