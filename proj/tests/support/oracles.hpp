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

// Independent reference computations. Nothing here calls into the library
// except for plain data types, so agreement with it is meaningful.

#include <Eigen/Cholesky>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "expgeo/types.hpp"

namespace oracle {

using expgeo::Matrix;
using expgeo::Vector;

inline double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
inline double logit(double p) { return std::log(p) - std::log1p(-p); }

inline double binary_kl(double p, double q) {
  auto term = [](double a, double b) { return a == 0.0 ? 0.0 : a * std::log(a / b); };
  return term(p, q) + term(1.0 - p, 1.0 - q);
}

/// Log-partition functions written out directly from their textbook forms.
inline double log_partition(const std::string& family, const Vector& t, double variance = 1.0) {
  if (family == "gaussian_fixed_variance") return 0.5 * variance * t[0] * t[0];
  if (family == "bernoulli") return std::log(1.0 + std::exp(t[0]));
  if (family == "poisson") return std::exp(t[0]);
  if (family == "exponential") return -std::log(-t[0]);
  double s = 1.0;  // categorical
  for (Eigen::Index i = 0; i < t.size(); ++i) s += std::exp(t[i]);
  return std::log(s);
}

/// Central differences with step h scaled to |x_i|.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double step = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    Vector a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                          double step = 1e-6) {
  const Vector f0 = f(x);
  Matrix j(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    Vector a = x, b = x;
    a[i] += h;
    b[i] -= h;
    j.col(i) = (f(a) - f(b)) / (2.0 * h);
  }
  return j;
}

/// max |a - b| / max(|b|, floor), coordinatewise over the vectors.
inline double relative_error(const Vector& a, const Vector& b, double floor = 1e-6) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), floor);
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Golden-section maximizer of a unimodal function on [a, b].
inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  while (b - a > tol) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

/// Grid minimizer of a scalar function.
inline double grid_argmin(const std::function<double(double)>& f, double lo, double hi,
                          double step) {
  double best = lo, best_value = f(lo);
  const long n = std::lround((hi - lo) / step);
  for (long i = 1; i <= n; ++i) {
    const double x = lo + i * step;
    const double v = f(x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  }
  return best;
}

/// Logistic regression on features (1, x) by Newton's method (IRLS).
/// Returns (bias, w_1, ..., w_m).
inline Vector logistic_regression(const std::vector<std::vector<std::uint8_t>>& x,
                                  const std::vector<int>& y) {
  const std::size_t n = x.size();
  const int m = static_cast<int>(x[0].size());
  Vector beta = Vector::Zero(m + 1);
  for (int iter = 0; iter < 100; ++iter) {
    Vector grad = Vector::Zero(m + 1);
    Matrix hess = Matrix::Zero(m + 1, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
      Vector z(m + 1);
      z[0] = 1.0;
      for (int j = 0; j < m; ++j) z[j + 1] = x[i][j];
      const double p = logistic(beta.dot(z));
      grad += (y[i] - p) * z;
      hess += p * (1.0 - p) * z * z.transpose();
    }
    const Vector step = hess.ldlt().solve(grad);
    beta += step;
    if (step.cwiseAbs().maxCoeff() < 1e-14) break;
  }
  return beta;
}

/// Joint naive Bayes log p(x, y | theta) by explicit enumeration of the
/// normalizer over all 2^m * 2 cells.
inline double joint_log_probability(const Vector& theta, std::span<const std::uint8_t> x, int y) {
  const int m = static_cast<int>(x.size());
  auto score = [&](const std::vector<int>& xx, int yy) {
    double s = yy ? theta[2 * m] : 0.0;
    for (int j = 0; j < m; ++j) s += xx[j] * theta[yy * m + j];
    return s;
  };
  double z = 0.0;
  std::vector<int> cell(m);
  for (int yy = 0; yy < 2; ++yy) {
    for (int mask = 0; mask < (1 << m); ++mask) {
      for (int j = 0; j < m; ++j) cell[j] = (mask >> j) & 1;
      z += std::exp(score(cell, yy));
    }
  }
  std::vector<int> xi(x.begin(), x.end());
  return score(xi, y) - std::log(z);
}

/// Mean of T(x, y) under the joint naive Bayes family, by enumeration.
inline Vector joint_mean(const Vector& theta, int m) {
  Vector mean = Vector::Zero(2 * m + 1);
  std::vector<std::uint8_t> cell(m);
  for (int y = 0; y < 2; ++y) {
    for (int mask = 0; mask < (1 << m); ++mask) {
      for (int j = 0; j < m; ++j) cell[j] = (mask >> j) & 1;
      const double p = std::exp(joint_log_probability(theta, cell, y));
      for (int j = 0; j < m; ++j) mean[y * m + j] += p * cell[j];
      mean[2 * m] += p * y;
    }
  }
  return mean;
}

/// Inverse of `joint_mean`: class prior and per-class feature rates.
inline Vector joint_natural(const Vector& mean, int m) {
  Vector theta(2 * m + 1);
  const double py = mean[2 * m];
  double shift = logit(py);
  for (int j = 0; j < m; ++j) {
    theta[j] = logit(mean[j] / (1.0 - py));
    theta[m + j] = logit(mean[m + j] / py);
    shift += std::log1p(std::exp(theta[j])) - std::log1p(std::exp(theta[m + j]));
  }
  theta[2 * m] = shift;
  return theta;
}

/// p(y = 1 | x, theta).
inline double joint_posterior(const Vector& theta, std::span<const std::uint8_t> x) {
  return logistic(joint_log_probability(theta, x, 1) - joint_log_probability(theta, x, 0));
}

/// EM for max_g sum_i log p(x_i | g) - lambda B_G(g || theta_d): the E-step
/// completes every row with p(y | x, g), the M-step is the conjugate update
/// with lambda pseudo-observations at the mean of theta_d.
inline Vector em_generative_map(const std::vector<std::vector<std::uint8_t>>& x,
                                const Vector& theta_d, double lambda, Vector g, int iterations) {
  const int m = static_cast<int>(x[0].size());
  const Vector prior = lambda * joint_mean(theta_d, m);
  for (int it = 0; it < iterations; ++it) {
    Vector stats = prior;
    for (const auto& row : x) {
      const double r = joint_posterior(g, row);
      for (int j = 0; j < m; ++j) {
        stats[j] += (1.0 - r) * row[j];
        stats[m + j] += r * row[j];
      }
      stats[2 * m] += r;
    }
    g = joint_natural(stats / (static_cast<double>(x.size()) + lambda), m);
  }
  return g;
}

/// sum_i log p(x_i | g) with the class marginalized out.
inline double marginal_log_likelihood(const std::vector<std::vector<std::uint8_t>>& x,
                                      const Vector& g) {
  double total = 0.0;
  for (const auto& row : x) {
    const double a = joint_log_probability(g, row, 0), b = joint_log_probability(g, row, 1);
    total += std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
  }
  return total;
}

}  // namespace oracle
