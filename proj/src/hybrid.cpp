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

#include "expgeo/hybrid.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "expgeo/errors.hpp"
#include "expgeo/estimation.hpp"
#include "expgeo/optimize.hpp"

namespace expgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_add_exp(double a, double b) {
  const double top = std::max(a, b);
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

int features_of(const FamilySpec& fam) { return (fam.dimension - 1) / 2; }

// <theta, T(x, y)>.
double score(const Vector& theta, std::span<const std::uint8_t> x, int y) {
  const int m = static_cast<int>(x.size());
  double s = y == 1 ? theta[2 * m] : 0.0;
  for (int j = 0; j < m; ++j) {
    if (x[j]) s += theta[y * m + j];
  }
  return s;
}

// out += c * T(x, y).
void add_statistic(Vector& out, std::span<const std::uint8_t> x, int y, double c) {
  const int m = static_cast<int>(x.size());
  for (int j = 0; j < m; ++j) {
    if (x[j]) out[y * m + j] += c;
  }
  if (y == 1) out[2 * m] += c;
}

// Log-partition pieces: G = log(exp(L0) + exp(L1)).
struct JointPartition {
  double l0 = 0.0, l1 = 0.0;
  explicit JointPartition(const Vector& t) {
    const int m = static_cast<int>((t.size() - 1) / 2);
    l1 = t[2 * m];
    for (int j = 0; j < m; ++j) {
      l0 += softplus(t[j]);
      l1 += softplus(t[m + j]);
    }
  }
  double value() const { return log_add_exp(l0, l1); }
  double class_one() const { return logistic(l1 - l0); }
};

Vector joint_gradient(const Vector& t) {
  const int m = static_cast<int>((t.size() - 1) / 2);
  const double pi = JointPartition(t).class_one();
  Vector g(t.size());
  for (int j = 0; j < m; ++j) {
    g[j] = (1.0 - pi) * logistic(t[j]);
    g[m + j] = pi * logistic(t[m + j]);
  }
  g[2 * m] = pi;
  return g;
}

Matrix joint_hessian(const Vector& t) {
  // Covariance of T under the joint model.
  const int m = static_cast<int>((t.size() - 1) / 2);
  const int d = 2 * m + 1;
  const double pi = JointPartition(t).class_one();
  const Vector mu = joint_gradient(t);
  Matrix second = Matrix::Zero(d, d);
  for (int c = 0; c < 2; ++c) {
    const double pc = c == 1 ? pi : 1.0 - pi;
    for (int j = 0; j < m; ++j) {
      const double sj = logistic(t[c * m + j]);
      for (int k = 0; k < m; ++k) {
        second(c * m + j, c * m + k) = j == k ? pc * sj : pc * sj * logistic(t[c * m + k]);
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    second(m + j, 2 * m) = second(2 * m, m + j) = pi * logistic(t[m + j]);
  }
  second(2 * m, 2 * m) = pi;
  return second - mu * mu.transpose();
}

// Per-class feature probabilities and the class prior implied by a mean point.
Vector joint_inverse_gradient(const Vector& mu) {
  const int m = static_cast<int>((mu.size() - 1) / 2);
  const double pi = mu[2 * m];
  Vector t(mu.size());
  double correction = 0.0;
  for (int j = 0; j < m; ++j) {
    const double p0 = mu[j] / (1.0 - pi), p1 = mu[m + j] / pi;
    t[j] = std::log(p0 / (1.0 - p0));
    t[m + j] = std::log(p1 / (1.0 - p1));
    correction += std::log1p(-p1) - std::log1p(-p0);
  }
  t[2 * m] = std::log(pi / (1.0 - pi)) + correction;
  return t;
}

double joint_negative_entropy(const Vector& mu) {
  const int m = static_cast<int>((mu.size() - 1) / 2);
  const double pi = mu[2 * m];
  double total = xlogy(pi, pi) + xlogy(1.0 - pi, 1.0 - pi);
  for (int j = 0; j < m; ++j) {
    const double a0 = mu[j], b0 = (1.0 - pi) - mu[j];
    const double a1 = mu[m + j], b1 = pi - mu[m + j];
    total += xlogy(a0, a0 / (1.0 - pi)) + xlogy(b0, b0 / (1.0 - pi));
    total += xlogy(a1, a1 / pi) + xlogy(b1, b1 / pi);
  }
  return total;
}

DomainSpec joint_mean_domain(int m) {
  const int d = 2 * m + 1;
  auto contains = [m, d](const Vector& mu) {
    if (mu.size() != d || !mu.allFinite()) return false;
    const double pi = mu[2 * m];
    if (!(pi > 0.0 && pi < 1.0)) return false;
    for (int j = 0; j < m; ++j) {
      if (!(mu[j] > 0.0 && mu[j] < 1.0 - pi)) return false;
      if (!(mu[m + j] > 0.0 && mu[m + j] < pi)) return false;
    }
    return true;
  };
  auto closure = [m, d](const Vector& mu) {
    if (mu.size() != d || !mu.allFinite()) return false;
    const double pi = mu[2 * m];
    if (!(pi >= 0.0 && pi <= 1.0)) return false;
    for (int j = 0; j < m; ++j) {
      if (!(mu[j] >= 0.0 && mu[j] <= 1.0 - pi)) return false;
      if (!(mu[m + j] >= 0.0 && mu[m + j] <= pi)) return false;
    }
    return true;
  };
  auto clamp = [m](const Vector& mu, double eps) {
    Vector out = mu;
    const double pi = std::clamp(mu[2 * m], 3.0 * eps, 1.0 - 3.0 * eps);
    out[2 * m] = pi;
    for (int j = 0; j < m; ++j) {
      out[j] = std::clamp(mu[j], eps, 1.0 - pi - eps);
      out[m + j] = std::clamp(mu[m + j], eps, pi - eps);
    }
    return out;
  };
  Vector reference = Vector::Constant(d, 0.25);
  reference[2 * m] = 0.5;
  return DomainSpec::custom(d, contains, closure, clamp, reference);
}

// Distinct feature patterns with their row counts, so objective evaluation
// costs O(patterns) rather than O(rows).
struct PatternTable {
  std::vector<std::vector<std::uint8_t>> patterns;
  std::vector<double> all;                      // every row
  std::vector<std::array<double, 2>> labeled;   // rows per label
  double total_rows = 0.0;

  explicit PatternTable(const LabeledBinaryDataset& data) {
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto [it, inserted] = index.emplace(data.features[i], patterns.size());
      if (inserted) {
        patterns.push_back(data.features[i]);
        all.push_back(0.0);
        labeled.push_back({0.0, 0.0});
      }
      all[it->second] += 1.0;
      if (data.labels[i]) labeled[it->second][*data.labels[i]] += 1.0;
    }
    total_rows = static_cast<double>(data.size());
  }
};

// T(x, 1) - T(x, 0).
Vector label_contrast(std::span<const std::uint8_t> x) {
  Vector t = joint_statistic(x, 1);
  add_statistic(t, x, 0, -1.0);
  return t;
}

// Labeled conditional log-likelihood with optional gradient and Hessian.
double discriminative_term(const PatternTable& table, const Vector& theta, Vector* grad,
                           Matrix* hess = nullptr) {
  double total = 0.0;
  for (std::size_t p = 0; p < table.patterns.size(); ++p) {
    const auto& w = table.labeled[p];
    if (w[0] == 0.0 && w[1] == 0.0) continue;
    const auto& x = table.patterns[p];
    const double s0 = score(theta, x, 0), s1 = score(theta, x, 1);
    const double lse = log_add_exp(s0, s1);
    total += w[0] * (s0 - lse) + w[1] * (s1 - lse);
    if (grad) {
      const double p1 = logistic(s1 - s0);
      const double n = w[0] + w[1];
      add_statistic(*grad, x, 0, w[0] - n * (1.0 - p1));
      add_statistic(*grad, x, 1, w[1] - n * p1);
    }
    if (hess) {
      const double p1 = logistic(s1 - s0);
      const Vector c = label_contrast(x);
      *hess -= (w[0] + w[1]) * p1 * (1.0 - p1) * c * c.transpose();
    }
  }
  return total;
}

// Marginal generative log-likelihood over every row, with optional gradient
// and Hessian.
double generative_term(const PatternTable& table, const FamilySpec& fam, const Vector& theta,
                       Vector* grad, Matrix* hess = nullptr) {
  double total = 0.0;
  for (std::size_t p = 0; p < table.patterns.size(); ++p) {
    const auto& x = table.patterns[p];
    const double s0 = score(theta, x, 0), s1 = score(theta, x, 1);
    total += table.all[p] * log_add_exp(s0, s1);
    if (grad) {
      const double p1 = logistic(s1 - s0);
      add_statistic(*grad, x, 0, table.all[p] * (1.0 - p1));
      add_statistic(*grad, x, 1, table.all[p] * p1);
    }
    if (hess) {
      // Posterior variance of the label given x.
      const double p1 = logistic(s1 - s0);
      const Vector c = label_contrast(x);
      *hess += table.all[p] * p1 * (1.0 - p1) * c * c.transpose();
    }
  }
  total -= table.total_rows * fam.G.value(theta);
  if (grad) *grad -= table.total_rows * fam.G.gradient(theta);
  if (hess) *hess -= table.total_rows * fam.G.hessian(theta);
  return total;
}

// Hessian of -lambda B_G(theta_g || theta_d) in (theta_d, theta_g) order.
// The theta_d block carries a third-derivative term, taken as a central
// difference of the analytic Hessian along theta_g - theta_d.
Matrix coupling_hessian(const FamilySpec& fam, const Vector& td, const Vector& tg, double lambda) {
  const int d = fam.dimension;
  const Matrix hd = fam.G.hessian(td);
  const Vector v = tg - td;
  Matrix third = Matrix::Zero(d, d);
  const double vnorm = v.norm();
  if (vnorm > 0.0) {
    const double eps = 1e-5 / vnorm;
    third = (fam.G.hessian(td + eps * v) - fam.G.hessian(td - eps * v)) / (2.0 * eps);
  }
  Matrix h(2 * d, 2 * d);
  h.topLeftCorner(d, d) = lambda * (third - hd);
  h.topRightCorner(d, d) = lambda * hd;
  h.bottomLeftCorner(d, d) = lambda * hd;
  h.bottomRightCorner(d, d) = -lambda * fam.G.hessian(tg);
  return h;
}

void check_joint(const FamilySpec& fam, const NaturalParam& theta, const char* name) {
  if (theta.size() != fam.dimension || !fam.natural_domain().contains(theta.vec())) {
    throw DomainError(name, "outside the natural parameter space of the joint family");
  }
}

void check_features(const FamilySpec& fam, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != features_of(fam)) {
    throw DomainError("x", "feature count does not match the joint family");
  }
}

}  // namespace

std::size_t LabeledBinaryDataset::labeled_count() const {
  std::size_t count = 0;
  for (const auto& y : labels) count += y.has_value();
  return count;
}

void validate(const LabeledBinaryDataset& data) {
  if (data.features.size() != data.labels.size()) {
    throw DataError("feature rows and labels differ in length");
  }
  const std::size_t m = data.features.empty() ? 0 : data.features[0].size();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.features[i].size() != m) throw DataError("row " + std::to_string(i) + " is ragged");
    for (auto v : data.features[i]) {
      if (v > 1) throw DataError("row " + std::to_string(i) + " has a non-binary feature");
    }
    if (data.labels[i] && *data.labels[i] != 0 && *data.labels[i] != 1) {
      throw DataError("row " + std::to_string(i) + " has a label outside {0, 1}");
    }
  }
}

Vector joint_statistic(std::span<const std::uint8_t> x, int y) {
  const int m = static_cast<int>(x.size());
  Vector t = Vector::Zero(2 * m + 1);
  add_statistic(t, x, y, 1.0);
  return t;
}

FamilySpec joint_family(int m) {
  if (m < 1) throw ConfigError("the joint family needs at least one feature");
  const int d = 2 * m + 1;
  DomainSpec mean_domain = joint_mean_domain(m);
  ConvexFunctionParts g{
      .domain = DomainSpec::whole_space(d),
      .value = [](const Vector& t) { return JointPartition(t).value(); },
      .gradient = joint_gradient,
      .inverse_gradient = joint_inverse_gradient,
      .hessian = joint_hessian,
      .gradient_range = mean_domain,
  };
  ConvexFunctionParts f{
      .domain = mean_domain,
      .value = joint_negative_entropy,
      .gradient = joint_inverse_gradient,
      .inverse_gradient = joint_gradient,
      .hessian = [](const Vector& mu) -> Matrix {
        return joint_hessian(joint_inverse_gradient(mu)).inverse();
      },
      .gradient_range = DomainSpec::whole_space(d),
  };
  auto stat = [m](const Vector& raw) {
    if (raw.size() != m + 1) throw DomainError("x", "expected m features followed by the label");
    std::vector<std::uint8_t> x(m);
    for (int j = 0; j < m; ++j) {
      if (raw[j] != 0.0 && raw[j] != 1.0) throw DomainError("x", "features must be 0 or 1");
      x[j] = static_cast<std::uint8_t>(raw[j]);
    }
    if (raw[m] != 0.0 && raw[m] != 1.0) throw DomainError("y", "label must be 0 or 1");
    return joint_statistic(x, static_cast<int>(raw[m]));
  };
  auto sampler = [m](const Vector& t, std::mt19937_64& rng) {
    const int y = std::bernoulli_distribution(JointPartition(t).class_one())(rng) ? 1 : 0;
    std::vector<std::uint8_t> x(m);
    for (int j = 0; j < m; ++j) {
      x[j] = std::bernoulli_distribution(logistic(t[y * m + j]))(rng) ? 1 : 0;
    }
    return joint_statistic(x, y);
  };
  FamilyConstants constants;
  constants.arity = 2;
  return FamilySpec{"naive_bayes_joint",
                    d,
                    ConvexFunction(std::move(g)),
                    ConvexFunction(std::move(f)),
                    stat,
                    [](const Vector&) { return 0.0; },
                    sampler,
                    constants};
}

double log_discriminative(const NaturalParam& theta_d, std::span<const std::uint8_t> x, int y,
                          const FamilySpec& fam) {
  check_joint(fam, theta_d, "theta_d");
  check_features(fam, x);
  if (y != 0 && y != 1) throw DomainError("y", "label must be 0 or 1");
  // Scores <theta, T(x, y')> + log h(x, y') with h = 1; G(theta_d) cancels.
  Vector raw(x.size() + 1);
  for (std::size_t j = 0; j < x.size(); ++j) raw[j] = x[j];
  double scores[2];
  for (int label = 0; label < 2; ++label) {
    raw[x.size()] = label;
    scores[label] = theta_d.vec().dot(fam.suff_stat(raw)) + fam.log_base_measure(raw);
  }
  return scores[y] - log_add_exp(scores[0], scores[1]);
}

double log_marginal(const NaturalParam& theta_g, std::span<const std::uint8_t> x,
                    const FamilySpec& fam) {
  check_joint(fam, theta_g, "theta_g");
  check_features(fam, x);
  return log_add_exp(score(theta_g.vec(), x, 0), score(theta_g.vec(), x, 1)) -
         fam.G.value(theta_g.vec());
}

double coupling_log_prior(const NaturalParam& theta_g, const NaturalParam& theta_d, double lambda,
                          const FamilySpec& fam) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("coupling strength must be a finite nonnegative number");
  }
  if (!fam.natural_domain().contains(theta_g.vec())) throw DomainError("theta_g", "not interior");
  if (!fam.natural_domain().contains(theta_d.vec())) throw DomainError("theta_d", "not interior");
  if (lambda == 0.0) return 0.0;
  return -lambda * bregman(fam.G, theta_g.vec(), theta_d.vec());
}

ConjugateHyperparams coupling_hyperparams(const FamilySpec& fam, const NaturalParam& theta_d,
                                          double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw HyperparamError("coupling hyperparameters need 0 < lambda < inf");
  }
  return ConjugateHyperparams::at(fam, fam.to_mean(theta_d), lambda);
}

double hybrid_objective(const LabeledBinaryDataset& data, const HybridParams& params) {
  validate(data);
  const FamilySpec fam = joint_family(data.feature_count());
  check_joint(fam, params.theta_d, "theta_d");
  check_joint(fam, params.theta_g, "theta_g");
  const PatternTable table(data);
  double total = discriminative_term(table, params.theta_d.vec(), nullptr) +
                 generative_term(table, fam, params.theta_g.vec(), nullptr);
  if (std::isinf(params.lambda)) {
    return params.theta_d.vec() == params.theta_g.vec() ? total : -kInf;
  }
  return total + coupling_log_prior(params.theta_g, params.theta_d, params.lambda, fam);
}

std::pair<Vector, Vector> hybrid_gradient(const LabeledBinaryDataset& data,
                                          const HybridParams& params) {
  validate(data);
  const FamilySpec fam = joint_family(data.feature_count());
  check_joint(fam, params.theta_d, "theta_d");
  check_joint(fam, params.theta_g, "theta_g");
  if (!(params.lambda >= 0.0) || std::isinf(params.lambda)) {
    throw ConfigError("gradient needs a finite nonnegative lambda");
  }
  const PatternTable table(data);
  const Vector& td = params.theta_d.vec();
  const Vector& tg = params.theta_g.vec();
  Vector gd = Vector::Zero(fam.dimension), gg = Vector::Zero(fam.dimension);
  discriminative_term(table, td, &gd);
  generative_term(table, fam, tg, &gg);
  if (params.lambda > 0.0) {
    gg -= params.lambda * (fam.G.gradient(tg) - fam.G.gradient(td));
    gd += params.lambda * (fam.G.hessian(td) * (tg - td));
  }
  return {gd, gg};
}

Dataset labeled_statistics(const LabeledBinaryDataset& data) {
  Dataset out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i]) out.points.push_back(joint_statistic(data.features[i], *data.labels[i]));
  }
  return out;
}

NaturalParam hybrid_initial_point(const LabeledBinaryDataset& data) {
  const FamilySpec fam = joint_family(data.feature_count());
  const NaturalParam uniform(Vector::Zero(fam.dimension));
  const auto hp = ConjugateHyperparams::at(fam, fam.to_mean(uniform), 1.0);
  return fit_map(fam, labeled_statistics(data), hp).theta_hat;
}

HybridFit fit_hybrid(const LabeledBinaryDataset& data, double lambda, const HybridOptions& options) {
  validate(data);
  if (std::isnan(lambda) || lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  const int m = data.feature_count();
  if (m < 1) throw DataError("the hybrid model needs at least one feature column");
  std::array<bool, 2> seen{false, false};
  for (const auto& y : data.labels) {
    if (y) seen[*y] = true;
  }
  if (!seen[0] || !seen[1]) throw DataError("training needs at least one labeled row per class");

  const FamilySpec fam = joint_family(m);
  const int d = fam.dimension;
  const PatternTable table(data);
  const Vector start = hybrid_initial_point(data).vec();

  DescentOptions descent;
  descent.gradient_tol = options.gradient_tol;
  descent.max_iter = options.max_iter;

  HybridFit fit;
  fit.params.lambda = lambda;
  DescentResult result;
  if (std::isinf(lambda)) {
    // Tied parameters: labeled rows see p(y|x) p(x) = p(x, y).
    auto objective = [&](const Vector& t) {
      return -(discriminative_term(table, t, nullptr) + generative_term(table, fam, t, nullptr));
    };
    auto gradient = [&](const Vector& t) -> Vector {
      Vector g = Vector::Zero(d);
      discriminative_term(table, t, &g);
      generative_term(table, fam, t, &g);
      return -g;
    };
    auto hessian = [&](const Vector& t) -> Matrix {
      Matrix h = Matrix::Zero(d, d);
      discriminative_term(table, t, nullptr, &h);
      generative_term(table, fam, t, nullptr, &h);
      return -h;
    };
    result = minimize_newton(objective, gradient, hessian, DomainSpec::whole_space(d), start,
                             descent);
    fit.params.theta_d = NaturalParam(result.x);
    fit.params.theta_g = NaturalParam(result.x);
  } else {
    auto split = [d](const Vector& z) {
      return std::pair<Vector, Vector>(z.head(d), z.tail(d));
    };
    auto objective = [&](const Vector& z) {
      auto [td, tg] = split(z);
      double total = discriminative_term(table, td, nullptr) + generative_term(table, fam, tg, nullptr);
      if (lambda > 0.0) total -= lambda * bregman(fam.G, tg, td);
      return -total;
    };
    auto gradient = [&](const Vector& z) -> Vector {
      auto [td, tg] = split(z);
      Vector gd = Vector::Zero(d), gg = Vector::Zero(d);
      discriminative_term(table, td, &gd);
      generative_term(table, fam, tg, &gg);
      if (lambda > 0.0) {
        gg -= lambda * (fam.G.gradient(tg) - fam.G.gradient(td));
        gd += lambda * (fam.G.hessian(td) * (tg - td));
      }
      Vector out(2 * d);
      out << -gd, -gg;
      return out;
    };
    auto hessian = [&](const Vector& z) -> Matrix {
      auto [td, tg] = split(z);
      Matrix h = lambda > 0.0 ? coupling_hessian(fam, td, tg, lambda) : Matrix::Zero(2 * d, 2 * d);
      Matrix hd = Matrix::Zero(d, d), hg = Matrix::Zero(d, d);
      discriminative_term(table, td, nullptr, &hd);
      generative_term(table, fam, tg, nullptr, &hg);
      h.topLeftCorner(d, d) += hd;
      h.bottomRightCorner(d, d) += hg;
      return -h;
    };
    Vector z0(2 * d);
    z0 << start, start;
    result = minimize_newton(objective, gradient, hessian, DomainSpec::whole_space(2 * d), z0,
                             descent);
    fit.params.theta_d = NaturalParam(result.x.head(d));
    fit.params.theta_g = NaturalParam(result.x.tail(d));
  }
  if (!result.converged) {
    throw ConvergenceError("hybrid training did not converge", result.gradient_norm, result.x);
  }
  fit.objective = -result.value;
  fit.gradient_norm = result.gradient_norm;
  fit.iterations = result.iterations;
  return fit;
}

LabeledBinaryDataset synthetic_hybrid_data(const NaturalParam& theta, std::size_t n,
                                           double unlabeled_fraction, std::uint64_t seed) {
  if (!(unlabeled_fraction >= 0.0 && unlabeled_fraction <= 1.0)) {
    throw ConfigError("unlabeled fraction must lie in [0, 1]");
  }
  const int m = static_cast<int>((theta.size() - 1) / 2);
  if (theta.size() != 2 * m + 1 || m < 1) throw ConfigError("joint parameter must have 2m+1 entries");
  const FamilySpec fam = joint_family(m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabeledBinaryDataset data;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector t = fam.sampler(theta.vec(), rng);
    const int y = t[2 * m] > 0.5 ? 1 : 0;
    std::vector<std::uint8_t> x(m);
    for (int j = 0; j < m; ++j) x[j] = t[y * m + j] > 0.5 ? 1 : 0;
    data.features.push_back(std::move(x));
    const bool hide = unit(rng) < unlabeled_fraction;
    data.labels.push_back(hide ? std::nullopt : std::optional<int>(y));
  }
  return data;
}

NaturalParam demo_joint_parameter(int m) {
  if (m < 1) throw ConfigError("need at least one feature");
  Vector t(2 * m + 1);
  for (int j = 0; j < m; ++j) {
    t[j] = j % 2 == 0 ? -0.7 : 1.0;
    t[m + j] = j % 2 == 0 ? 1.2 : -0.9;
  }
  t[2 * m] = 0.2;
  return NaturalParam(t);
}

}  // namespace expgeo
