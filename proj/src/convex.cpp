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

#include "expgeo/convex.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace expgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Vector& x) { return x.allFinite(); }

// Moves `bound` inward by `margin`, falling back to one ulp when the
// margin is below the bound's resolution.
double inset(double bound, double margin, double direction) {
  double moved = bound + direction * margin;
  if (moved == bound) moved = std::nextafter(bound, direction * kInf);
  return moved;
}

void check_dimension(const ConvexFunction& f, const Vector& x, const char* name) {
  if (x.size() != f.dimension()) {
    throw DomainError(name, "expected dimension " + std::to_string(f.dimension()) + ", got " +
                                std::to_string(x.size()));
  }
}

}  // namespace

DomainSpec DomainSpec::whole_space(int dimension) {
  return custom(
      dimension, [](const Vector& x) { return all_finite(x); },
      [](const Vector& x) { return all_finite(x); },
      [](const Vector& x, double) { return x; }, Vector::Zero(dimension));
}

DomainSpec DomainSpec::open_box(Vector lower, Vector upper, bool closed_lower, bool closed_upper) {
  const int d = static_cast<int>(lower.size());
  Vector reference(d);
  for (int j = 0; j < d; ++j) {
    const bool lo = std::isfinite(lower[j]), hi = std::isfinite(upper[j]);
    if (lo && hi) {
      reference[j] = 0.5 * (lower[j] + upper[j]);
    } else if (lo) {
      reference[j] = lower[j] + 1.0;
    } else if (hi) {
      reference[j] = upper[j] - 1.0;
    } else {
      reference[j] = 0.0;
    }
  }
  auto contains = [lower, upper](const Vector& x) {
    if (x.size() != lower.size() || !all_finite(x)) return false;
    return ((x.array() > lower.array()) && (x.array() < upper.array())).all();
  };
  auto closure = [lower, upper, closed_lower, closed_upper](const Vector& x) {
    if (x.size() != lower.size() || !all_finite(x)) return false;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const bool above = closed_lower ? x[j] >= lower[j] : x[j] > lower[j];
      const bool below = closed_upper ? x[j] <= upper[j] : x[j] < upper[j];
      if (!above || !below) return false;
    }
    return true;
  };
  auto clamp = [lower, upper](const Vector& x, double margin) {
    Vector y = x;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      if (std::isfinite(lower[j])) y[j] = std::max(y[j], inset(lower[j], margin, 1.0));
      if (std::isfinite(upper[j])) y[j] = std::min(y[j], inset(upper[j], margin, -1.0));
    }
    return y;
  };
  return custom(d, contains, closure, clamp, reference);
}

DomainSpec DomainSpec::open_simplex(int dimension) {
  auto contains = [dimension](const Vector& x) {
    return x.size() == dimension && all_finite(x) && (x.array() > 0.0).all() && x.sum() < 1.0;
  };
  auto closure = [dimension](const Vector& x) {
    return x.size() == dimension && all_finite(x) && (x.array() >= 0.0).all() && x.sum() <= 1.0;
  };
  auto clamp = [dimension](const Vector& x, double margin) {
    Vector y = x.cwiseMax(margin);
    const double d = dimension;
    const double total = y.sum();
    if (total > 1.0 - margin) {
      const double scale = (1.0 - (d + 1.0) * margin) / (total - d * margin);
      y = (margin + scale * (y.array() - margin)).matrix();
    }
    return y;
  };
  return custom(dimension, contains, closure, clamp,
                Vector::Constant(dimension, 1.0 / (dimension + 1.0)));
}

DomainSpec DomainSpec::custom(int dimension, Predicate contains, Predicate closure_contains,
                              Clamp clamp, Vector reference_point) {
  if (dimension < 1) throw ConfigError("domain dimension must be positive");
  DomainSpec d;
  d.dimension_ = dimension;
  d.contains_ = std::move(contains);
  d.closure_contains_ = std::move(closure_contains);
  d.clamp_ = std::move(clamp);
  d.reference_ = std::move(reference_point);
  return d;
}

bool DomainSpec::contains(const Vector& x) const { return contains_(x); }

bool DomainSpec::closure_contains(const Vector& x) const { return closure_contains_(x); }

Vector DomainSpec::interior_clamp(const Vector& x) const { return clamp_(x, margin_); }

DomainSpec DomainSpec::with_margin(double margin) const {
  if (!(margin > 0.0)) throw ConfigError("domain margin must be positive");
  DomainSpec copy = *this;
  copy.margin_ = margin;
  return copy;
}

ConvexFunction::ConvexFunction(ConvexFunctionParts parts) {
  if (!parts.value || !parts.gradient) {
    throw ConfigError("convex function needs both a value and a gradient");
  }
  parts_ = std::make_shared<const ConvexFunctionParts>(std::move(parts));
}

Matrix ConvexFunction::hessian(const Vector& x) const {
  if (parts_->hessian) return parts_->hessian(x);
  return finite_difference_hessian(parts_->gradient, parts_->domain, x);
}

Vector ConvexFunction::inverse_gradient(const Vector& y) const {
  if (!parts_->inverse_gradient) throw ConfigError("no analytic inverse gradient");
  return parts_->inverse_gradient(y);
}

Matrix finite_difference_hessian(const std::function<Vector(const Vector&)>& gradient,
                                 const DomainSpec& domain, const Vector& x) {
  const Eigen::Index d = x.size();
  Matrix h(d, d);
  const double base_step = std::max(1e-6, 1e-8 * x.norm());
  for (Eigen::Index i = 0; i < d; ++i) {
    double step = base_step;
    Vector plus = x, minus = x;
    for (int tries = 0; tries < 60; ++tries) {
      plus[i] = x[i] + step;
      minus[i] = x[i] - step;
      if (domain.contains(plus) && domain.contains(minus)) break;
      step *= 0.5;
    }
    h.col(i) = (gradient(plus) - gradient(minus)) / (plus[i] - minus[i]);
  }
  return 0.5 * (h + h.transpose());
}

double bregman(const ConvexFunction& f, const Vector& p, const Vector& q) {
  check_dimension(f, p, "p");
  check_dimension(f, q, "q");
  if (!f.domain().closure_contains(p)) throw DomainError("p", "outside the domain");
  if (!f.domain().contains(q)) throw DomainError("q", "not interior to the domain");
  const double fp = f.value(p);
  if (!std::isfinite(fp)) throw DomainError("p", "function is not finite there");
  const double div = fp - f.value(q) - f.gradient(q).dot(p - q);
  return std::max(0.0, div);
}

Vector dual_point(const ConvexFunction& f, const Vector& p) {
  check_dimension(f, p, "p");
  if (!f.domain().contains(p)) throw DomainError("p", "not interior to the domain");
  return f.gradient(p);
}

namespace {

double residual_norm(const ConvexFunction& f, const Vector& p, const Vector& target) {
  return (f.gradient(p) - target).norm();
}

// Monotone 1-d root finding of F'(p) = target by bracketing then bisection.
std::optional<Vector> bisect_1d(const ConvexFunction& f, const Vector& start, const Vector& target,
                                double tol, int max_iter) {
  const DomainSpec& dom = f.domain();
  auto h = [&](double x) { return f.gradient(make_vector({x}))[0] - target[0]; };
  double lo = start[0], hi = start[0];
  const double h0 = h(start[0]);
  if (h0 == 0.0) return start;
  const double direction = h0 < 0.0 ? 1.0 : -1.0;
  double edge = start[0];
  double step = 1.0;
  bool bracketed = false;
  for (int k = 0; k < 4 * max_iter && step > 1e-300; ++k) {
    const double cand = edge + direction * step;
    if (!dom.contains(make_vector({cand}))) {
      step *= 0.5;
      continue;
    }
    const double hc = h(cand);
    if ((direction > 0 && hc >= 0.0) || (direction < 0 && hc <= 0.0)) {
      (direction > 0 ? hi : lo) = cand;
      (direction > 0 ? lo : hi) = edge;
      bracketed = true;
      break;
    }
    edge = cand;
    step *= 2.0;
  }
  if (!bracketed) return std::nullopt;
  const double scale = tol * (1.0 + std::abs(target[0]));
  for (int k = 0; k < max_iter; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (std::abs(hm) <= scale) return make_vector({mid});
    if (mid == lo || mid == hi) return make_vector({mid});
    (hm < 0.0 ? lo : hi) = mid;
  }
  return std::nullopt;
}

}  // namespace

Vector solve_inverse_gradient(const ConvexFunction& f, const Vector& target,
                              const InverseGradientOptions& options) {
  check_dimension(f, target, "target");
  if (!target.allFinite()) throw DomainError("target", "not finite");
  if (f.gradient_range() && !f.gradient_range()->contains(target)) {
    throw DomainError("target", "outside the range of the gradient");
  }
  const DomainSpec& dom = f.domain();
  const double scale = options.tolerance * (1.0 + target.norm());
  auto merit = [&](const Vector& p) { return f.value(p) - target.dot(p); };

  Vector p = dom.reference_point();
  Vector g = f.gradient(p) - target;
  double r = g.norm();
  bool stalled = false;
  for (int iter = 0; iter < options.max_iter && r > scale; ++iter) {
    const Matrix h = f.hessian(p);
    Vector dir = -h.ldlt().solve(g);
    if (!dir.allFinite() || dir.dot(g) >= 0.0) dir = -g;
    const double phi = merit(p);
    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
      Vector cand = p + step * dir;
      if (!dom.contains(cand)) continue;
      const double phi_c = merit(cand);
      Vector g_c = f.gradient(cand) - target;
      const double r_c = g_c.norm();
      if (!std::isfinite(phi_c) || !std::isfinite(r_c)) continue;
      if (phi_c <= phi + 1e-4 * step * g.dot(dir) || r_c < r) {
        p = std::move(cand);
        g = std::move(g_c);
        r = r_c;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stalled = true;
      break;
    }
  }

  if (r <= scale) {
    // A few full Newton steps to push the residual to machine precision.
    for (int polish = 0; polish < 3; ++polish) {
      Vector cand = p - f.hessian(p).ldlt().solve(g);
      if (!dom.contains(cand)) break;
      Vector g_c = f.gradient(cand) - target;
      if (!(g_c.norm() < r)) break;
      p = std::move(cand);
      g = std::move(g_c);
      r = g.norm();
    }
    return p;
  }

  if (f.dimension() == 1) {
    if (auto root = bisect_1d(f, p, target, options.tolerance, options.max_iter)) {
      if (residual_norm(f, *root, target) <= scale) return *root;
      r = residual_norm(f, *root, target);
      p = *root;
    }
  }
  throw ConvergenceError(stalled ? "inverse gradient solve stalled"
                                 : "inverse gradient solve hit max_iter",
                         r, p);
}

ConvexFunction legendre_dual(const ConvexFunction& f) {
  const int d = f.dimension();
  DomainSpec dual_domain = f.gradient_range() ? *f.gradient_range() : DomainSpec::whole_space(d);

  // Maximizer of <x, y> - F(x), i.e. (grad F)^-1(y).
  auto argmax = [f, dual_domain](const Vector& y) -> Vector {
    if (y.size() != f.dimension() || !dual_domain.contains(y)) {
      throw UnboundedDualError("supremum not attained: point outside the dual domain");
    }
    if (f.has_inverse_gradient()) return f.inverse_gradient(y);
    try {
      return solve_inverse_gradient(f, y);
    } catch (const ConvergenceError& e) {
      throw UnboundedDualError(std::string("supremum not attained: ") + e.what());
    } catch (const DomainError& e) {
      throw UnboundedDualError(std::string("supremum not attained: ") + e.what());
    }
  };

  ConvexFunctionParts parts;
  parts.domain = dual_domain;
  parts.value = [f, argmax](const Vector& y) {
    const Vector x = argmax(y);
    return x.dot(y) - f.value(x);
  };
  parts.gradient = argmax;
  parts.inverse_gradient = [f](const Vector& x) { return f.gradient(x); };
  parts.hessian = [f, argmax](const Vector& y) -> Matrix {
    const Matrix h = f.hessian(argmax(y));
    return h.inverse();
  };
  parts.gradient_range = f.domain();
  return ConvexFunction(std::move(parts));
}

}  // namespace expgeo
