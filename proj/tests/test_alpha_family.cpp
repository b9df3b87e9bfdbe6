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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "expgeo/alpha_family.hpp"
#include "expgeo/errors.hpp"
#include "expgeo/expfam.hpp"
#include "support/oracles.hpp"

namespace expgeo {
namespace {

// The convexity gap written out independently of the library.
double zhang(const std::string& family, const Vector& t1, const Vector& t2, double a) {
  const double u = (1.0 - a) / 2.0, v = (1.0 + a) / 2.0;
  return 4.0 / (1.0 - a * a) *
         (u * oracle::log_partition(family, t1) + v * oracle::log_partition(family, t2) -
          oracle::log_partition(family, u * t1 + v * t2));
}

TEST(AlphaIndex, RejectsOutOfRange) {
  EXPECT_THROW(AlphaIndex(1.5), ConfigError);
  EXPECT_THROW(AlphaIndex(-1.0001), ConfigError);
  EXPECT_THROW(AlphaIndex(NAN), ConfigError);
  EXPECT_TRUE(AlphaIndex(1.0).is_limit());
  EXPECT_TRUE(AlphaIndex(-1.0).is_limit());
  EXPECT_FALSE(AlphaIndex(0.999).is_limit());
}

TEST(AlphaDivergence, BernoulliAtZero) {
  const FamilySpec b = make_family("bernoulli");
  const double d = alpha_divergence(b.G, NaturalParam{-1.0}, NaturalParam{2.0}, AlphaIndex(0.0));
  EXPECT_NEAR(d, zhang("bernoulli", make_vector({-1}), make_vector({2}), 0.0), 1e-14);
  EXPECT_NEAR(d, 0.984071, 5e-6);
}

TEST(AlphaDivergence, LimitsAreBregman) {
  const FamilySpec p = make_family("poisson");
  const NaturalParam t1{0.4}, t2{-0.3};
  EXPECT_NEAR(alpha_divergence(p.G, t1, t2, AlphaIndex(1.0)), bregman(p.G, t1.vec(), t2.vec()), 1e-15);
  EXPECT_NEAR(alpha_divergence(p.G, t1, t2, AlphaIndex(-1.0)), bregman(p.G, t2.vec(), t1.vec()), 1e-15);
}

TEST(AlphaDivergence, MatchesTheIndependentFormula) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> index(-0.99, 0.99);
  for (const auto& name : family_names()) {
    const FamilySpec fam = make_family(name);
    for (int i = 0; i < 50; ++i) {
      const NaturalParam t1 = random_natural_point(fam, rng), t2 = random_natural_point(fam, rng);
      const double a = index(rng);
      const double expected = zhang(name, t1.vec(), t2.vec(), a);
      EXPECT_NEAR(alpha_divergence(fam.G, t1, t2, AlphaIndex(a)), expected,
                  1e-9 * (1.0 + std::abs(expected)))
          << name;
    }
  }
}

TEST(AlphaDivergence, NonnegativeAndZeroOnTheDiagonal) {
  std::mt19937_64 rng(22);
  for (const auto& name : family_names()) {
    const FamilySpec fam = make_family(name);
    for (int i = 0; i < 30; ++i) {
      const NaturalParam t1 = random_natural_point(fam, rng), t2 = random_natural_point(fam, rng);
      for (double a : {-1.0, -0.6, 0.0, 0.3, 1.0}) {
        EXPECT_GE(alpha_divergence(fam.G, t1, t2, AlphaIndex(a)), -1e-12) << name;
        EXPECT_NEAR(alpha_divergence(fam.G, t1, t1, AlphaIndex(a)), 0.0, 1e-12) << name;
      }
    }
  }
}

TEST(AlphaDivergence, SkewSymmetry) {
  std::mt19937_64 rng(23);
  const FamilySpec e = make_family("exponential");
  for (int i = 0; i < 30; ++i) {
    const NaturalParam t1 = random_natural_point(e, rng), t2 = random_natural_point(e, rng);
    for (double a : {-0.8, 0.0, 0.5, 1.0}) {
      EXPECT_NEAR(alpha_divergence(e.G, t1, t2, AlphaIndex(a)),
                  alpha_divergence(e.G, t2, t1, AlphaIndex(-a)), 1e-11);
    }
  }
}

TEST(AlphaDivergence, QuadraticGeneratorIsIndexFree) {
  FamilyConstants c;
  c.variance = 1.7;
  const FamilySpec g = make_family("gaussian_fixed_variance", c);
  const NaturalParam t1{0.8}, t2{-1.9};
  const double half_sq = 0.5 * 1.7 * 2.7 * 2.7;
  for (double a : {-0.9, -0.5, 0.0, 0.5, 0.9, 1.0, -1.0}) {
    EXPECT_NEAR(alpha_divergence(g.G, t1, t2, AlphaIndex(a)), half_sq, 1e-12) << a;
  }
}

TEST(AlphaDivergence, DomainErrors) {
  const FamilySpec e = make_family("exponential");
  EXPECT_THROW(alpha_divergence(e.G, NaturalParam{0.5}, NaturalParam{-1.0}, AlphaIndex(0.0)),
               DomainError);
  EXPECT_THROW(alpha_divergence(e.G, NaturalParam{-1.0}, NaturalParam{0.0}, AlphaIndex(0.0)),
               DomainError);
}

TEST(AlphaLimitCheck, GapsShrinkTowardTheLimits) {
  std::mt19937_64 rng(24);
  FamilyConstants three;
  three.arity = 3;
  std::vector<FamilySpec> fams;
  for (const auto& name : family_names()) fams.push_back(make_family(name));
  fams.push_back(make_family("categorical", three));
  for (const auto& fam : fams) {
    for (int i = 0; i < 20; ++i) {
      const NaturalParam t1 = random_natural_point(fam, rng), t2 = random_natural_point(fam, rng);
      const AlphaLimitDiagnostic diag = alpha_limit_check(fam.G, t1, t2);
      ASSERT_EQ(diag.alphas.size(), 4u);
      EXPECT_NEAR(diag.alphas.back(), 1.0 - 1e-5, 1e-15);
      EXPECT_TRUE(diag.passed()) << fam.name;
      EXPECT_LE(diag.gaps.back(), 1e-3 * (1.0 + diag.bregman_forward)) << fam.name;
      EXPECT_LE(diag.mirrored_gaps.back(), 1e-3 * (1.0 + diag.bregman_reverse)) << fam.name;
    }
  }
}

}  // namespace
}  // namespace expgeo
