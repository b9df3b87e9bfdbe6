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

#include "expgeo/estimation.hpp"

#include <cmath>

#include "expgeo/errors.hpp"

namespace expgeo {

namespace {

void require_interior_mean(const FamilySpec& fam, const Vector& mu, const char* context) {
  if (!fam.mean_domain().contains(mu)) {
    throw BoundaryError(std::string(context) + ": the mean of the data lies on the boundary of the " +
                        "mean space of " + fam.name +
                        "; use MAP estimation with an interior prior instead");
  }
}

void check_weighted_points(std::span<const Vector> points, std::span<const double> weights) {
  if (points.empty()) throw EmptyDataError("median problem needs at least one point");
  if (points.size() != weights.size()) throw ConfigError("one weight per point required");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("median weights must be positive");
  }
}

}  // namespace

std::string_view to_string(EstimateMethod method) {
  return method == EstimateMethod::closed_form ? "closed_form" : "numerical";
}

EstimateReport fit_ml(const FamilySpec& fam, const Dataset& data) {
  if (data.empty()) throw EmptyDataError("maximum likelihood needs at least one observation");
  validate_dataset(fam, data);
  const Vector mu = data.sum() / static_cast<double>(data.n());
  require_interior_mean(fam, mu, "fit_ml");

  EstimateReport report;
  report.mu_hat = MeanParam(mu);
  report.theta_hat = fam.to_natural(report.mu_hat);
  for (const auto& x : data.points) report.objective_value += bregman(fam.F, x, mu);
  report.method = EstimateMethod::closed_form;
  return report;
}

EstimateReport fit_map(const FamilySpec& fam, const Dataset& data, const ConjugateHyperparams& hp) {
  if (hp.alpha().size() != fam.dimension ||
      !fam.mean_domain().closure_contains(hp.pseudo_mean().vec())) {
    throw HyperparamError("alpha / beta lies outside the mean space of " + fam.name);
  }
  validate_dataset(fam, data);
  const double n = static_cast<double>(data.n());
  const Vector mu = data.empty() ? Vector(hp.alpha() / hp.beta())
                                 : Vector((data.sum() + hp.alpha()) / (n + hp.beta()));
  require_interior_mean(fam, mu, "fit_map");

  EstimateReport report;
  report.mu_hat = MeanParam(mu);
  report.theta_hat = fam.to_natural(report.mu_hat);
  for (const auto& x : data.points) report.objective_value += bregman(fam.F, x, mu);
  report.objective_value += hp.beta() * bregman(fam.F, hp.pseudo_mean().vec(), mu);
  report.method = EstimateMethod::closed_form;
  return report;
}

double median_objective(const FamilySpec& fam, std::span<const Vector> points,
                        std::span<const double> weights, MedianSpace space, const Vector& x) {
  check_weighted_points(points, weights);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += weights[i] * (space == MedianSpace::mean ? bregman(fam.F, points[i], x)
                                                      : bregman(fam.G, x, points[i]));
  }
  return total;
}

Vector median_gradient(const FamilySpec& fam, std::span<const Vector> points,
                       std::span<const double> weights, MedianSpace space, const Vector& x) {
  check_weighted_points(points, weights);
  double total_weight = 0.0;
  Vector weighted = Vector::Zero(fam.dimension);
  for (std::size_t i = 0; i < points.size(); ++i) {
    total_weight += weights[i];
    weighted += weights[i] * (space == MedianSpace::mean ? points[i] : fam.G.gradient(points[i]));
  }
  if (space == MedianSpace::mean) return -(fam.F.hessian(x) * (weighted - total_weight * x));
  return total_weight * fam.G.gradient(x) - weighted;
}

EstimateReport solve_median_numerical(const FamilySpec& fam, std::span<const Vector> points,
                                      std::span<const double> weights, MedianSpace space,
                                      const MedianSolverOptions& options) {
  check_weighted_points(points, weights);
  const bool mean_space = space == MedianSpace::mean;
  const ConvexFunction& fn = mean_space ? fam.F : fam.G;
  for (const auto& p : points) {
    const bool ok = p.size() == fam.dimension &&
                    (mean_space ? fn.domain().closure_contains(p) : fn.domain().contains(p));
    if (!ok) throw DomainError("points", "point outside the domain of the median problem");
  }

  double total_weight = 0.0;
  Vector weighted_sum = Vector::Zero(fam.dimension);
  double constant = 0.0;
  Vector weighted_grad_sum = Vector::Zero(fam.dimension);
  for (std::size_t i = 0; i < points.size(); ++i) {
    total_weight += weights[i];
    weighted_sum += weights[i] * points[i];
    if (mean_space) {
      constant += weights[i] * fn.value(points[i]);
    } else {
      const Vector g = fn.gradient(points[i]);
      weighted_grad_sum += weights[i] * g;
      constant += weights[i] * (g.dot(points[i]) - fn.value(points[i]));
    }
  }

  std::function<double(const Vector&)> objective;
  auto gradient = [&](const Vector& x) { return median_gradient(fam, points, weights, space, x); };
  if (mean_space) {
    // sum_i w_i [F(p_i) - F(mu) - <grad F(mu), p_i - mu>]
    objective = [&](const Vector& mu) {
      return constant - total_weight * fn.value(mu) -
             fn.gradient(mu).dot(weighted_sum - total_weight * mu);
    };
  } else {
    // sum_i w_i [G(theta) - G(t_i) - <grad G(t_i), theta - t_i>]
    objective = [&](const Vector& theta) {
      return total_weight * fn.value(theta) - weighted_grad_sum.dot(theta) + constant;
    };
  }

  DescentOptions descent;
  descent.gradient_tol = options.gradient_tol;
  descent.max_iter = options.max_iter;
  DescentResult result =
      minimize(objective, gradient, fn.domain(), fn.domain().reference_point(), descent);
  if (!result.converged) {
    throw ConvergenceError("Bregman median solver did not converge", result.gradient_norm, result.x);
  }

  EstimateReport report;
  if (mean_space) {
    report.mu_hat = MeanParam(result.x);
    report.theta_hat = fam.to_natural(report.mu_hat);
  } else {
    report.theta_hat = NaturalParam(result.x);
    report.mu_hat = fam.to_mean(report.theta_hat);
  }
  report.objective_value = result.value;
  report.method = EstimateMethod::numerical;
  report.iterations = result.iterations;
  return report;
}

double objective_nonconjugate(const ConvexFunction& G, const ConvexFunction& Q,
                              const NaturalParam& theta, std::span<const NaturalParam> data_duals,
                              const NaturalParam& prior_point, double beta) {
  if (!(beta > 0.0)) throw HyperparamError("beta must be positive");
  if (!G.domain().contains(theta.vec()) || !Q.domain().contains(theta.vec())) {
    throw DomainError("theta", "must be interior to the domains of both G and Q");
  }
  double total = 0.0;
  for (const auto& t : data_duals) total += bregman(G, theta.vec(), t.vec());
  return total + beta * bregman(Q, theta.vec(), prior_point.vec());
}

Vector nonconjugate_gradient(const ConvexFunction& G, const ConvexFunction& Q,
                             const NaturalParam& theta, std::span<const NaturalParam> data_duals,
                             const NaturalParam& prior_point, double beta) {
  if (!(beta > 0.0)) throw HyperparamError("beta must be positive");
  const Vector& t = theta.vec();
  Vector g = beta * (Q.gradient(t) - Q.gradient(prior_point.vec()));
  for (const auto& d : data_duals) g += G.gradient(t) - G.gradient(d.vec());
  return g;
}

NonconjugateFit minimize_nonconjugate(const ConvexFunction& G, const ConvexFunction& Q,
                                      std::span<const NaturalParam> data_duals,
                                      const NaturalParam& prior_point, double beta,
                                      const MedianSolverOptions& options) {
  if (!(beta > 0.0)) throw HyperparamError("beta must be positive");
  for (const auto& t : data_duals) {
    if (!G.domain().contains(t.vec())) throw DomainError("data_duals", "not interior to G's domain");
  }
  if (!Q.domain().contains(prior_point.vec())) {
    throw DomainError("prior_point", "not interior to Q's domain");
  }
  const DomainSpec& dg = G.domain();
  const DomainSpec& dq = Q.domain();
  Vector start = dg.contains(prior_point.vec()) ? prior_point.vec() : dg.reference_point();
  if (!dq.contains(start)) throw DomainError("prior_point", "no common interior starting point");
  DomainSpec both = DomainSpec::custom(
      G.dimension(), [dg, dq](const Vector& x) { return dg.contains(x) && dq.contains(x); },
      [dg, dq](const Vector& x) { return dg.closure_contains(x) && dq.closure_contains(x); },
      [dg, dq](const Vector& x, double) { return dq.interior_clamp(dg.interior_clamp(x)); }, start);

  auto objective = [&](const Vector& x) {
    return objective_nonconjugate(G, Q, NaturalParam(x), data_duals, prior_point, beta);
  };
  auto gradient = [&](const Vector& x) -> Vector {
    return nonconjugate_gradient(G, Q, NaturalParam(x), data_duals, prior_point, beta);
  };
  DescentOptions descent;
  descent.gradient_tol = options.gradient_tol;
  descent.max_iter = options.max_iter;
  DescentResult result = minimize(objective, gradient, both, start, descent);
  if (!result.converged) {
    throw ConvergenceError("non-conjugate MAP solver did not converge", result.gradient_norm,
                           result.x);
  }
  return NonconjugateFit{NaturalParam(result.x), result.value, result.iterations};
}

}  // namespace expgeo
