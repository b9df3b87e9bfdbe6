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

#include "expgeo/expfam.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "expgeo/errors.hpp"

namespace expgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// x log x with the 0 log 0 = 0 convention.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

Vector scalar(double x) { return Vector::Constant(1, x); }
Matrix scalar_matrix(double x) { return Matrix::Constant(1, 1, x); }

DomainSpec real_line() { return DomainSpec::whole_space(1); }

DomainSpec half_line(double lower, double upper, bool closed) {
  return DomainSpec::open_box(scalar(lower), scalar(upper), closed, closed);
}

FamilySpec assemble(std::string name, int dimension, ConvexFunctionParts g_parts,
                    ConvexFunctionParts f_parts, FamilySpec::StatFn stat,
                    FamilySpec::LogBaseFn log_base, FamilySpec::SamplerFn sampler,
                    const FamilyConstants& constants) {
  g_parts.gradient_range = f_parts.domain;
  f_parts.gradient_range = g_parts.domain;
  if (constants.numeric_dual) {
    g_parts.inverse_gradient = nullptr;
    ConvexFunction g(std::move(g_parts));
    ConvexFunction f = legendre_dual(g);
    return FamilySpec{std::move(name), dimension, g, f, std::move(stat), std::move(log_base),
                      std::move(sampler), constants};
  }
  ConvexFunction g(std::move(g_parts));
  ConvexFunction f(std::move(f_parts));
  return FamilySpec{std::move(name), dimension, g, f, std::move(stat), std::move(log_base),
                    std::move(sampler), constants};
}

FamilySpec gaussian_fixed_variance(const FamilyConstants& c) {
  const double s2 = c.variance;
  if (!(s2 > 0.0) || !std::isfinite(s2)) throw ConfigError("gaussian variance must be positive");
  ConvexFunctionParts g{
      .domain = real_line(),
      .value = [s2](const Vector& t) { return 0.5 * s2 * t[0] * t[0]; },
      .gradient = [s2](const Vector& t) { return scalar(s2 * t[0]); },
      .inverse_gradient = [s2](const Vector& m) { return scalar(m[0] / s2); },
      .hessian = [s2](const Vector&) { return scalar_matrix(s2); },
  };
  ConvexFunctionParts f{
      .domain = real_line(),
      .value = [s2](const Vector& m) { return 0.5 * m[0] * m[0] / s2; },
      .gradient = [s2](const Vector& m) { return scalar(m[0] / s2); },
      .inverse_gradient = [s2](const Vector& t) { return scalar(s2 * t[0]); },
      .hessian = [s2](const Vector&) { return scalar_matrix(1.0 / s2); },
  };
  auto log_base = [s2](const Vector& x) {
    return -0.5 * x[0] * x[0] / s2 - 0.5 * std::log(2.0 * std::numbers::pi * s2);
  };
  auto sampler = [s2](const Vector& t, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(s2 * t[0], std::sqrt(s2));
    return scalar(dist(rng));
  };
  return assemble("gaussian_fixed_variance", 1, std::move(g), std::move(f),
                  [](const Vector& x) { return x; }, log_base, sampler, c);
}

FamilySpec bernoulli(const FamilyConstants& c) {
  ConvexFunctionParts g{
      .domain = real_line(),
      .value = [](const Vector& t) { return softplus(t[0]); },
      .gradient = [](const Vector& t) { return scalar(logistic(t[0])); },
      .inverse_gradient = [](const Vector& m) { return scalar(std::log(m[0] / (1.0 - m[0]))); },
      .hessian =
          [](const Vector& t) {
            const double m = logistic(t[0]);
            return scalar_matrix(m * (1.0 - m));
          },
  };
  ConvexFunctionParts f{
      .domain = half_line(0.0, 1.0, true),
      .value = [](const Vector& m) { return xlogx(m[0]) + xlogx(1.0 - m[0]); },
      .gradient = [](const Vector& m) { return scalar(std::log(m[0] / (1.0 - m[0]))); },
      .inverse_gradient = [](const Vector& t) { return scalar(logistic(t[0])); },
      .hessian = [](const Vector& m) { return scalar_matrix(1.0 / (m[0] * (1.0 - m[0]))); },
  };
  auto sampler = [](const Vector& t, std::mt19937_64& rng) {
    std::bernoulli_distribution dist(logistic(t[0]));
    return scalar(dist(rng) ? 1.0 : 0.0);
  };
  return assemble("bernoulli", 1, std::move(g), std::move(f), [](const Vector& x) { return x; },
                  [](const Vector&) { return 0.0; }, sampler, c);
}

FamilySpec poisson(const FamilyConstants& c) {
  ConvexFunctionParts g{
      .domain = real_line(),
      .value = [](const Vector& t) { return std::exp(t[0]); },
      .gradient = [](const Vector& t) { return scalar(std::exp(t[0])); },
      .inverse_gradient = [](const Vector& m) { return scalar(std::log(m[0])); },
      .hessian = [](const Vector& t) { return scalar_matrix(std::exp(t[0])); },
  };
  ConvexFunctionParts f{
      .domain = half_line(0.0, kInf, true),
      .value = [](const Vector& m) { return xlogx(m[0]) - m[0]; },
      .gradient = [](const Vector& m) { return scalar(std::log(m[0])); },
      .inverse_gradient = [](const Vector& t) { return scalar(std::exp(t[0])); },
      .hessian = [](const Vector& m) { return scalar_matrix(1.0 / m[0]); },
  };
  auto sampler = [](const Vector& t, std::mt19937_64& rng) {
    std::poisson_distribution<long long> dist(std::exp(t[0]));
    return scalar(static_cast<double>(dist(rng)));
  };
  return assemble("poisson", 1, std::move(g), std::move(f), [](const Vector& x) { return x; },
                  [](const Vector& x) { return -std::lgamma(x[0] + 1.0); }, sampler, c);
}

FamilySpec exponential(const FamilyConstants& c) {
  ConvexFunctionParts g{
      .domain = half_line(-kInf, 0.0, false),
      .value = [](const Vector& t) { return -std::log(-t[0]); },
      .gradient = [](const Vector& t) { return scalar(-1.0 / t[0]); },
      .inverse_gradient = [](const Vector& m) { return scalar(-1.0 / m[0]); },
      .hessian = [](const Vector& t) { return scalar_matrix(1.0 / (t[0] * t[0])); },
  };
  ConvexFunctionParts f{
      .domain = half_line(0.0, kInf, false),
      .value = [](const Vector& m) { return -1.0 - std::log(m[0]); },
      .gradient = [](const Vector& m) { return scalar(-1.0 / m[0]); },
      .inverse_gradient = [](const Vector& t) { return scalar(-1.0 / t[0]); },
      .hessian = [](const Vector& m) { return scalar_matrix(1.0 / (m[0] * m[0])); },
  };
  auto log_base = [](const Vector& x) { return x[0] >= 0.0 ? 0.0 : -kInf; };
  auto sampler = [](const Vector& t, std::mt19937_64& rng) {
    std::exponential_distribution<double> dist(-t[0]);
    return scalar(dist(rng));
  };
  return assemble("exponential", 1, std::move(g), std::move(f), [](const Vector& x) { return x; },
                  log_base, sampler, c);
}

// log(1 + sum_j exp(theta_j)), stably.
double log1p_sum_exp(const Vector& t) {
  const double top = std::max(0.0, t.maxCoeff());
  return top + std::log(std::exp(-top) + (t.array() - top).exp().sum());
}

Vector softmax_tail(const Vector& t) {
  return (t.array() - log1p_sum_exp(t)).exp().matrix();
}

FamilySpec categorical(const FamilyConstants& c) {
  if (c.arity < 2) throw ConfigError("categorical arity must be at least 2");
  const int d = c.arity - 1;
  ConvexFunctionParts g{
      .domain = DomainSpec::whole_space(d),
      .value = log1p_sum_exp,
      .gradient = softmax_tail,
      .inverse_gradient =
          [](const Vector& m) {
            const double rest = std::log(1.0 - m.sum());
            return Vector((m.array().log() - rest).matrix());
          },
      .hessian =
          [](const Vector& t) {
            const Vector m = softmax_tail(t);
            return Matrix(Matrix(m.asDiagonal()) - m * m.transpose());
          },
  };
  ConvexFunctionParts f{
      .domain = DomainSpec::open_simplex(d),
      .value =
          [](const Vector& m) {
            double total = xlogx(1.0 - m.sum());
            for (Eigen::Index j = 0; j < m.size(); ++j) total += xlogx(m[j]);
            return total;
          },
      .gradient =
          [](const Vector& m) {
            const double rest = std::log(1.0 - m.sum());
            return Vector((m.array().log() - rest).matrix());
          },
      .inverse_gradient = softmax_tail,
      .hessian =
          [](const Vector& m) {
            const double rest = 1.0 - m.sum();
            Matrix h = Matrix::Constant(m.size(), m.size(), 1.0 / rest);
            h.diagonal().array() += m.array().inverse();
            return h;
          },
  };
  auto stat = [d](const Vector& raw) {
    const double idx = raw[0];
    if (idx < 0 || idx > d || idx != std::floor(idx)) {
      throw DomainError("x", "category index out of range");
    }
    Vector s = Vector::Zero(d);
    if (idx < d) s[static_cast<Eigen::Index>(idx)] = 1.0;
    return s;
  };
  auto sampler = [d](const Vector& t, std::mt19937_64& rng) {
    const Vector m = softmax_tail(t);
    std::vector<double> probs(m.data(), m.data() + d);
    probs.push_back(std::max(0.0, 1.0 - m.sum()));
    std::discrete_distribution<int> dist(probs.begin(), probs.end());
    const int k = dist(rng);
    Vector s = Vector::Zero(d);
    if (k < d) s[k] = 1.0;
    return s;
  };
  return assemble("categorical", d, std::move(g), std::move(f), stat,
                  [](const Vector&) { return 0.0; }, sampler, c);
}

void check_natural(const FamilySpec& fam, const NaturalParam& theta) {
  if (theta.size() != fam.dimension || !fam.natural_domain().contains(theta.vec())) {
    throw DomainError("theta", "outside the natural parameter space of " + fam.name);
  }
}

}  // namespace

MeanParam FamilySpec::to_mean(const NaturalParam& theta) const {
  check_natural(*this, theta);
  return MeanParam(G.gradient(theta.vec()));
}

NaturalParam FamilySpec::to_natural(const MeanParam& mu) const {
  if (mu.size() != dimension || !mean_domain().contains(mu.vec())) {
    throw DomainError("mu", "not interior to the mean parameter space of " + name);
  }
  return NaturalParam(F.gradient(mu.vec()));
}

Vector Dataset::sum() const {
  if (points.empty()) return Vector();
  Vector total = Vector::Zero(points.front().size());
  for (const auto& p : points) total += p;
  return total;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"gaussian_fixed_variance", "bernoulli", "poisson",
                                                 "exponential", "categorical"};
  return names;
}

FamilySpec make_family(const std::string& name, const FamilyConstants& constants) {
  if (name == "gaussian_fixed_variance") return gaussian_fixed_variance(constants);
  if (name == "bernoulli") return bernoulli(constants);
  if (name == "poisson") return poisson(constants);
  if (name == "exponential") return exponential(constants);
  if (name == "categorical") return categorical(constants);
  throw ConfigError("unknown family '" + name + "'");
}

FamilySpec make_family_from_string(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  FamilyConstants constants;
  if (colon != std::string::npos) {
    const std::string arg = spec.substr(colon + 1);
    std::istringstream in(arg);
    if (name == "gaussian_fixed_variance") {
      in >> constants.variance;
    } else if (name == "categorical") {
      in >> constants.arity;
    } else {
      throw ConfigError("family '" + name + "' takes no constant");
    }
    if (in.fail() || !in.eof()) throw ConfigError("bad family constant '" + arg + "'");
  }
  return make_family(name, constants);
}

double log_density(const FamilySpec& fam, const Vector& stat, const NaturalParam& theta) {
  check_natural(fam, theta);
  if (stat.size() != fam.dimension) throw DomainError("x", "wrong dimension");
  return fam.log_base_measure(stat) + theta.vec().dot(stat) - fam.G.value(theta.vec());
}

double log_density_bregman(const FamilySpec& fam, const Vector& stat, const NaturalParam& theta) {
  check_natural(fam, theta);
  if (stat.size() != fam.dimension || !fam.mean_domain().closure_contains(stat)) {
    throw DomainError("x", "sufficient statistic outside the closure of the mean space");
  }
  const Vector mu = fam.G.gradient(theta.vec());
  return fam.log_base_measure(stat) + fam.F.value(stat) - bregman(fam.F, stat, mu);
}

Dataset sample(const FamilySpec& fam, const NaturalParam& theta, std::size_t n,
               std::uint64_t seed) {
  check_natural(fam, theta);
  if (n == 0) throw ConfigError("sample size must be at least 1");
  std::mt19937_64 rng(seed);
  Dataset data;
  data.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) data.points.push_back(fam.sampler(theta.vec(), rng));
  return data;
}

void validate_dataset(const FamilySpec& fam, const Dataset& data) {
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    const Vector& p = data.points[i];
    if (p.size() != fam.dimension) {
      throw DataError("row " + std::to_string(i) + ": expected " + std::to_string(fam.dimension) +
                      " coordinates, got " + std::to_string(p.size()));
    }
    if (!fam.mean_domain().closure_contains(p)) {
      throw DataError("row " + std::to_string(i) + ": sufficient statistic outside the closure of " +
                      "the mean space of " + fam.name);
    }
  }
  if (data.labels && data.labels->size() != data.points.size()) {
    throw DataError("label count does not match row count");
  }
}

NaturalParam random_natural_point(const FamilySpec& fam, std::mt19937_64& rng, double spread) {
  const DomainSpec& dom = fam.natural_domain();
  const Vector ref = dom.reference_point();
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector noise(fam.dimension);
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = normal(rng);
  for (double scale = spread; scale > 1e-6; scale *= 0.5) {
    Vector theta = ref + scale * noise;
    if (dom.contains(theta)) return NaturalParam(theta);
  }
  return NaturalParam(ref);
}

}  // namespace expgeo
