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

#include <span>
#include <string_view>
#include <vector>

#include "expgeo/conjugate.hpp"
#include "expgeo/expfam.hpp"
#include "expgeo/optimize.hpp"

namespace expgeo {

enum class EstimateMethod { closed_form, numerical };

std::string_view to_string(EstimateMethod method);

struct EstimateReport {
  MeanParam mu_hat;
  NaturalParam theta_hat;
  double objective_value = 0.0;  // the minimized Bregman sum
  EstimateMethod method = EstimateMethod::closed_form;
  int iterations = 0;
};

/// Maximum likelihood as the Bregman median min_mu sum_i B_F(x_i || mu),
/// whose solution is the sample mean of the sufficient statistics.
EstimateReport fit_ml(const FamilySpec& fam, const Dataset& data);

/// MAP under a conjugate prior: mu = (sum_i x_i + alpha) / (n + beta), the
/// median of the data plus beta pseudo-points at alpha / beta.
EstimateReport fit_map(const FamilySpec& fam, const Dataset& data, const ConjugateHyperparams& hp);

enum class MedianSpace { mean, natural };

struct MedianSolverOptions {
  double gradient_tol = 1e-9;
  int max_iter = 10000;
};

/// Weighted Bregman median by projected gradient descent.
///
/// mean:    min_mu    sum_i w_i B_F(p_i || mu)     (points in the mean space)
/// natural: min_theta sum_i w_i B_G(theta || p_i)  (points in the natural space)
///
/// Mean-space points may lie on the closure of M where F is finite;
/// natural-space points must be interior. Throws ConvergenceError on
/// max_iter.
EstimateReport solve_median_numerical(const FamilySpec& fam, std::span<const Vector> points,
                                      std::span<const double> weights, MedianSpace space,
                                      const MedianSolverOptions& options = {});

/// Objective value of the weighted median problem at `x` (in the space's own
/// coordinates).
double median_objective(const FamilySpec& fam, std::span<const Vector> points,
                        std::span<const double> weights, MedianSpace space, const Vector& x);

/// Gradient of `median_objective` with respect to `x`.
Vector median_gradient(const FamilySpec& fam, std::span<const Vector> points,
                       std::span<const double> weights, MedianSpace space, const Vector& x);

/// Mixed-geometry MAP objective for a non-conjugate prior with generator Q:
/// sum_i B_G(theta || theta_i) + beta B_Q(theta || prior_point).
double objective_nonconjugate(const ConvexFunction& G, const ConvexFunction& Q,
                              const NaturalParam& theta, std::span<const NaturalParam> data_duals,
                              const NaturalParam& prior_point, double beta);

/// Gradient of `objective_nonconjugate` with respect to theta.
Vector nonconjugate_gradient(const ConvexFunction& G, const ConvexFunction& Q,
                             const NaturalParam& theta, std::span<const NaturalParam> data_duals,
                             const NaturalParam& prior_point, double beta);

struct NonconjugateFit {
  NaturalParam theta_hat;
  double objective_value = 0.0;
  int iterations = 0;
};

/// Numerical minimizer of `objective_nonconjugate` over the intersection of
/// both domains. No closed form exists when Q differs from G.
NonconjugateFit minimize_nonconjugate(const ConvexFunction& G, const ConvexFunction& Q,
                                      std::span<const NaturalParam> data_duals,
                                      const NaturalParam& prior_point, double beta,
                                      const MedianSolverOptions& options = {});

}  // namespace expgeo
