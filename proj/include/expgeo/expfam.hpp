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

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "expgeo/convex.hpp"
#include "expgeo/types.hpp"

namespace expgeo {

/// Constants that pin down a member of the catalog.
struct FamilyConstants {
  double variance = 1.0;  // gaussian_fixed_variance
  int arity = 2;          // categorical: k outcomes, d = k - 1
  /// Drop the analytic dual and inverse gradient and build F = G* numerically.
  bool numeric_dual = false;
};

/// An exponential family p(x; theta) = p0(x) exp(<theta, phi(x)> - G(theta))
/// in minimal representation.
///
/// Densities take the sufficient statistic phi(x) rather than the raw
/// observation; `suff_stat` performs that mapping for raw draws.
struct FamilySpec {
  using StatFn = std::function<Vector(const Vector&)>;
  using LogBaseFn = std::function<double(const Vector&)>;
  using SamplerFn = std::function<Vector(const Vector& theta, std::mt19937_64& rng)>;

  std::string name;
  int dimension = 0;
  ConvexFunction G;  // log-partition over the natural space
  ConvexFunction F;  // its dual over the mean space
  StatFn suff_stat;
  LogBaseFn log_base_measure;
  SamplerFn sampler;  // draws a sufficient statistic
  FamilyConstants constants;

  const DomainSpec& natural_domain() const { return G.domain(); }
  const DomainSpec& mean_domain() const { return F.domain(); }

  /// grad G(theta).
  MeanParam to_mean(const NaturalParam& theta) const;
  /// (grad G)^-1(mu) = grad F(mu).
  NaturalParam to_natural(const MeanParam& mu) const;
};

/// Observations already mapped through phi, with optional class labels.
struct Dataset {
  std::vector<Vector> points;
  std::optional<std::vector<int>> labels;

  std::size_t n() const { return points.size(); }
  bool empty() const { return points.empty(); }
  Vector sum() const;
};

/// Known names: gaussian_fixed_variance, bernoulli, poisson, exponential,
/// categorical. Throws ConfigError on anything else or invalid constants.
FamilySpec make_family(const std::string& name, const FamilyConstants& constants = {});

/// Parses "name" or "name:constant" (variance for the Gaussian, arity for the
/// categorical family).
FamilySpec make_family_from_string(const std::string& spec);

const std::vector<std::string>& family_names();

/// log p0(x) + <theta, phi(x)> - G(theta).
double log_density(const FamilySpec& fam, const Vector& stat, const NaturalParam& theta);

/// log p0(x) + F(phi(x)) - B_F(phi(x) || grad G(theta)). Equal to
/// `log_density` wherever both are defined.
double log_density_bregman(const FamilySpec& fam, const Vector& stat, const NaturalParam& theta);

/// n i.i.d. sufficient statistics, deterministic for a fixed seed.
Dataset sample(const FamilySpec& fam, const NaturalParam& theta, std::size_t n,
               std::uint64_t seed);

/// A random interior natural parameter: the domain's reference point plus
/// Gaussian noise of scale `spread`, shrunk until it lands inside.
NaturalParam random_natural_point(const FamilySpec& fam, std::mt19937_64& rng,
                                  double spread = 1.0);

/// Throws DataError unless every point lies in the closure of the mean space.
void validate_dataset(const FamilySpec& fam, const Dataset& data);

}  // namespace expgeo
