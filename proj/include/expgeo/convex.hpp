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
#include <memory>
#include <optional>
#include <string>

#include "expgeo/errors.hpp"
#include "expgeo/types.hpp"

namespace expgeo {

/// Convex subset of R^d on which a convex function is defined.
///
/// `contains` is the interior test used for every strict precondition.
/// `closure_contains` admits boundary points where the function still has a
/// finite limiting value (Bernoulli data at 0 or 1, for instance).
class DomainSpec {
 public:
  using Predicate = std::function<bool(const Vector&)>;
  using Clamp = std::function<Vector(const Vector&, double)>;

  static constexpr double kDefaultMargin = 1e-12;

  static DomainSpec whole_space(int dimension);
  /// Open box; bounds may be +-infinity. `closed_lower` / `closed_upper`
  /// decide whether the finite faces belong to the closure test.
  static DomainSpec open_box(Vector lower, Vector upper, bool closed_lower = true,
                             bool closed_upper = true);
  /// {x in R^d : x_j > 0, sum_j x_j < 1}.
  static DomainSpec open_simplex(int dimension);
  static DomainSpec custom(int dimension, Predicate contains, Predicate closure_contains,
                           Clamp clamp, Vector reference_point);

  int dimension() const { return dimension_; }
  bool contains(const Vector& x) const;
  bool closure_contains(const Vector& x) const;
  /// Maps any finite x to a point at least `margin()` inside the domain.
  Vector interior_clamp(const Vector& x) const;
  /// A fixed interior point, used as a solver starting point.
  const Vector& reference_point() const { return reference_; }

  double margin() const { return margin_; }
  DomainSpec with_margin(double margin) const;

 private:
  int dimension_ = 0;
  Predicate contains_;
  Predicate closure_contains_;
  Clamp clamp_;
  Vector reference_;
  double margin_ = kDefaultMargin;
};

/// Ingredients of a strictly convex differentiable function. Only `domain`,
/// `value` and `gradient` are mandatory.
struct ConvexFunctionParts {
  DomainSpec domain;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  /// Analytic (grad F)^-1; empty means "solve numerically".
  std::function<Vector(const Vector&)> inverse_gradient;
  /// Analytic Hessian; empty means central finite differences of `gradient`.
  std::function<Matrix(const Vector&)> hessian;
  /// Image of `gradient`, i.e. the domain of the Legendre dual.
  std::optional<DomainSpec> gradient_range;
};

/// Immutable handle to a strictly convex function. Copies share state and
/// are safe to evaluate concurrently.
class ConvexFunction {
 public:
  explicit ConvexFunction(ConvexFunctionParts parts);

  int dimension() const { return parts_->domain.dimension(); }
  const DomainSpec& domain() const { return parts_->domain; }
  const std::optional<DomainSpec>& gradient_range() const { return parts_->gradient_range; }

  double value(const Vector& x) const { return parts_->value(x); }
  Vector gradient(const Vector& x) const { return parts_->gradient(x); }
  Matrix hessian(const Vector& x) const;
  bool has_analytic_hessian() const { return static_cast<bool>(parts_->hessian); }
  bool has_inverse_gradient() const { return static_cast<bool>(parts_->inverse_gradient); }
  /// Analytic inverse gradient; throws ConfigError when absent.
  Vector inverse_gradient(const Vector& y) const;

  const ConvexFunctionParts& parts() const { return *parts_; }

 private:
  std::shared_ptr<const ConvexFunctionParts> parts_;
};

/// Central finite-difference Hessian of `gradient` at `x`, step
/// max(1e-6, 1e-8 |x|) shrunk as needed to stay inside `domain`.
Matrix finite_difference_hessian(const std::function<Vector(const Vector&)>& gradient,
                                 const DomainSpec& domain, const Vector& x);

/// B_F(p || q) = F(p) - F(q) - <grad F(q), p - q>.
/// `p` may sit on the closure of the domain, `q` must be interior.
double bregman(const ConvexFunction& f, const Vector& p, const Vector& q);

/// grad F(p) for interior p.
Vector dual_point(const ConvexFunction& f, const Vector& p);

struct InverseGradientOptions {
  double tolerance = 1e-10;
  int max_iter = 200;
};

/// Solves grad F(p) = target by damped Newton on F(p) - <target, p>, with a
/// bisection fallback in one dimension. Converged when
/// |grad F(p) - target| <= tolerance * (1 + |target|).
Vector solve_inverse_gradient(const ConvexFunction& f, const Vector& target,
                              const InverseGradientOptions& options = {});

/// Legendre dual G(y) = sup_x <x, y> - F(x). The dual's gradient is
/// (grad F)^-1 (analytic when F supplies it, an inner Newton solve
/// otherwise) and its inverse gradient is grad F.
ConvexFunction legendre_dual(const ConvexFunction& f);

}  // namespace expgeo
