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

#include <Eigen/Cholesky>

#include <cmath>
#include <random>

#include "expgeo/errors.hpp"
#include "expgeo/estimation.hpp"
#include "support/oracles.hpp"

namespace expgeo {
namespace {

Dataset points(std::initializer_list<double> xs) {
  Dataset d;
  for (double x : xs) d.points.push_back(make_vector({x}));
  return d;
}

std::vector<FamilySpec> catalog() {
  std::vector<FamilySpec> out;
  for (const auto& name : family_names()) out.push_back(make_family(name));
  FamilyConstants three;
  three.arity = 3;
  out.push_back(make_family("categorical", three));
  return out;
}

TEST(FitMl, GaussianMean) {
  const EstimateReport r = fit_ml(make_family("gaussian_fixed_variance"), points({1, 2, 3}));
  EXPECT_DOUBLE_EQ(r.mu_hat[0], 2.0);
  EXPECT_DOUBLE_EQ(r.theta_hat[0], 2.0);
  EXPECT_EQ(r.method, EstimateMethod::closed_form);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_DOUBLE_EQ(r.objective_value, 0.5 + 0.0 + 0.5);
}

TEST(FitMl, BernoulliMean) {
  const EstimateReport r = fit_ml(make_family("bernoulli"), points({1, 1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(r.mu_hat[0], 0.6);
  EXPECT_NEAR(r.theta_hat[0], 0.405465108108164, 1e-14);
  EXPECT_NEAR(r.objective_value, 3 * oracle::binary_kl(1, 0.6) + 2 * oracle::binary_kl(0, 0.6),
              1e-13);
}

TEST(FitMl, SinglePointIsItsOwnMedian) {
  EXPECT_DOUBLE_EQ(fit_ml(make_family("bernoulli"), points({0.3})).mu_hat[0], 0.3);
}

TEST(FitMl, Errors) {
  EXPECT_THROW(fit_ml(make_family("bernoulli"), Dataset{}), EmptyDataError);
  EXPECT_THROW(fit_ml(make_family("bernoulli"), points({1, 1, 1})), BoundaryError);
  EXPECT_THROW(fit_ml(make_family("bernoulli"), points({0.5, 2.0})), DataError);
}

TEST(FitMl, ThetaIsTheDualOfMu) {
  std::mt19937_64 rng(1);
  for (const auto& fam : catalog()) {
    const NaturalParam truth = random_natural_point(fam, rng);
    const std::uint64_t draw_seed = rng();
    const Dataset d = sample(fam, truth, 40, draw_seed);
    try {
      const EstimateReport r = fit_ml(fam, d);
      EXPECT_LE((fam.G.gradient(r.theta_hat.vec()) - r.mu_hat.vec()).cwiseAbs().maxCoeff(), 1e-8);
    } catch (const BoundaryError&) {
      // A sample can land on a face of the mean space; that is the documented error.
    }
  }
}

TEST(FitMap, BernoulliWithPseudoObservations) {
  const FamilySpec b = make_family("bernoulli");
  const ConjugateHyperparams hp(b, make_vector({1.0}), 2.0);
  const EstimateReport r = fit_map(b, points({1, 1, 1, 0, 0}), hp);
  EXPECT_NEAR(r.mu_hat[0], 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(r.mu_hat[0], 0.571429, 1e-6);
  const double expected = 3 * oracle::binary_kl(1, 4.0 / 7) + 2 * oracle::binary_kl(0, 4.0 / 7) +
                          2 * oracle::binary_kl(0.5, 4.0 / 7);
  EXPECT_NEAR(r.objective_value, expected, 1e-13);
}

TEST(FitMap, VanishingBetaRecoversMl) {
  const FamilySpec b = make_family("bernoulli");
  const Dataset d = points({1, 1, 1, 0, 0});
  const EstimateReport map = fit_map(b, d, ConjugateHyperparams::at(b, MeanParam{0.9}, 1e-12));
  EXPECT_NEAR(map.mu_hat[0], fit_ml(b, d).mu_hat[0], 1e-9);
}

TEST(FitMap, NoDataGivesThePseudoMean) {
  const FamilySpec p = make_family("poisson");
  const ConjugateHyperparams hp(p, make_vector({3.7}), 1.3);
  EXPECT_EQ(fit_map(p, Dataset{}, hp).mu_hat[0], 3.7 / 1.3);
}

TEST(FitMap, PriorRescuesBoundaryData) {
  const FamilySpec b = make_family("bernoulli");
  const EstimateReport r = fit_map(b, points({1, 1, 1}), ConjugateHyperparams::at(b, MeanParam{0.5}, 1.0));
  EXPECT_DOUBLE_EQ(r.mu_hat[0], 3.5 / 4.0);
}

TEST(FitMap, HyperparametersAreValidatedAtConstruction) {
  const FamilySpec b = make_family("bernoulli");
  EXPECT_THROW(ConjugateHyperparams(b, make_vector({3.0}), 2.0), HyperparamError);
  EXPECT_THROW(ConjugateHyperparams(b, make_vector({1.0}), 0.0), HyperparamError);
  EXPECT_THROW(ConjugateHyperparams(b, make_vector({1.0}), -1.0), HyperparamError);
  EXPECT_THROW(ConjugateHyperparams(b, make_vector({1.0, 1.0}), 3.0), HyperparamError);
}

TEST(FitMap, PseudoObservationEquivalence) {
  std::mt19937_64 rng(2);
  for (const auto& fam : catalog()) {
    for (int beta = 1; beta <= 5; ++beta) {
      const NaturalParam truth = random_natural_point(fam, rng);
      const std::uint64_t draw_seed = rng();
      const Dataset d = sample(fam, truth, 12, draw_seed);
      const auto hp = ConjugateHyperparams::at(fam, fam.to_mean(random_natural_point(fam, rng)), beta);
      Dataset augmented = d;
      for (int k = 0; k < beta; ++k) augmented.points.push_back(hp.pseudo_mean().vec());
      const Vector map = fit_map(fam, d, hp).mu_hat.vec();
      EXPECT_LE((map - fit_ml(fam, augmented).mu_hat.vec()).cwiseAbs().maxCoeff(), 1e-10);
      std::vector<double> w(augmented.n(), 1.0);
      const Vector num =
          solve_median_numerical(fam, augmented.points, w, MedianSpace::mean).mu_hat.vec();
      EXPECT_LE((map - num).cwiseAbs().maxCoeff(), 1e-6) << fam.name;
    }
  }
}

TEST(FitMap, MonotoneShrinkageTowardThePseudoMean) {
  std::mt19937_64 rng(3);
  for (const auto& fam : catalog()) {
    const NaturalParam truth = random_natural_point(fam, rng);
    const std::uint64_t draw_seed = rng();
    const Dataset d = sample(fam, truth, 20, draw_seed);
    const MeanParam location = fam.to_mean(random_natural_point(fam, rng));
    double previous = INFINITY;
    for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
      const auto hp = ConjugateHyperparams::at(fam, location, beta);
      const double dist = (fit_map(fam, d, hp).mu_hat.vec() - location.vec()).norm();
      EXPECT_LE(dist, previous + 1e-15) << fam.name << " beta=" << beta;
      previous = dist;
    }
  }
}

TEST(MedianSolver, EuclideanCentroid) {
  const std::vector<Vector> p = {make_vector({1}), make_vector({2}), make_vector({3})};
  const EstimateReport r = solve_median_numerical(make_family("gaussian_fixed_variance"), p,
                                                  std::vector<double>(3, 1.0), MedianSpace::mean);
  EXPECT_NEAR(r.mu_hat[0], 2.0, 1e-9);
  EXPECT_EQ(r.method, EstimateMethod::numerical);
}

TEST(MedianSolver, NaturalSpaceRightCentroidIsTheMean) {
  const FamilySpec b = make_family("bernoulli");
  const std::vector<Vector> p = {make_vector({oracle::logit(0.2)}), make_vector({oracle::logit(0.6)})};
  const EstimateReport r =
      solve_median_numerical(b, p, std::vector<double>(2, 1.0), MedianSpace::natural);
  EXPECT_NEAR(r.theta_hat[0], oracle::logit(0.4), 1e-8);
  EXPECT_NEAR(r.mu_hat[0], 0.4, 1e-9);
}

TEST(MedianSolver, WeightedMean) {
  const std::vector<Vector> p = {make_vector({0.5}), make_vector({0.9})};
  const std::vector<double> w = {3.0, 1.0};
  EXPECT_NEAR(solve_median_numerical(make_family("bernoulli"), p, w, MedianSpace::mean).mu_hat[0],
              0.6, 1e-9);
}

TEST(MedianSolver, Errors) {
  const FamilySpec b = make_family("bernoulli");
  const std::vector<Vector> p = {make_vector({0.5})};
  EXPECT_THROW(solve_median_numerical(b, {}, {}, MedianSpace::mean), EmptyDataError);
  EXPECT_THROW(solve_median_numerical(b, p, std::vector<double>{0.0}, MedianSpace::mean), ConfigError);
  EXPECT_THROW(solve_median_numerical(b, p, std::vector<double>{1.0, 1.0}, MedianSpace::mean),
               ConfigError);
  const std::vector<Vector> outside = {make_vector({1.5})};
  EXPECT_THROW(solve_median_numerical(b, outside, std::vector<double>{1.0}, MedianSpace::mean),
               DomainError);
  const std::vector<Vector> far = {make_vector({0.999})};
  MedianSolverOptions one;
  one.max_iter = 1;
  EXPECT_THROW(solve_median_numerical(b, far, std::vector<double>{1.0}, MedianSpace::mean, one),
               ConvergenceError);
}

TEST(MedianSolver, SpacesAreLegendreDuals) {
  std::mt19937_64 rng(4);
  for (const auto& fam : catalog()) {
    std::vector<Vector> thetas, means;
    std::vector<double> w;
    std::uniform_real_distribution<double> weight(0.5, 3.0);
    for (int i = 0; i < 8; ++i) {
      thetas.push_back(random_natural_point(fam, rng).vec());
      means.push_back(fam.G.gradient(thetas.back()));
      w.push_back(weight(rng));
    }
    const EstimateReport mean = solve_median_numerical(fam, means, w, MedianSpace::mean);
    const EstimateReport nat = solve_median_numerical(fam, thetas, w, MedianSpace::natural);
    EXPECT_LE((mean.mu_hat.vec() - nat.mu_hat.vec()).cwiseAbs().maxCoeff(), 1e-6) << fam.name;
    Vector weighted = Vector::Zero(fam.dimension);
    double total = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
      weighted += w[i] * means[i];
      total += w[i];
    }
    EXPECT_LE((mean.mu_hat.vec() - weighted / total).cwiseAbs().maxCoeff(), 1e-6) << fam.name;
  }
}

TEST(MedianSolver, SolutionIsAStrictMinimum) {
  std::mt19937_64 rng(5);
  for (const auto& fam : catalog()) {
    std::vector<Vector> p;
    for (int i = 0; i < 6; ++i) p.push_back(fam.G.gradient(random_natural_point(fam, rng).vec()));
    const std::vector<double> w(p.size(), 1.0);
    const Vector x = solve_median_numerical(fam, p, w, MedianSpace::mean).mu_hat.vec();
    const Matrix h = oracle::fd_jacobian(
        [&](const Vector& v) { return median_gradient(fam, p, w, MedianSpace::mean, v); }, x);
    Eigen::LLT<Matrix> llt(0.5 * (h + h.transpose()));
    EXPECT_EQ(llt.info(), Eigen::Success) << fam.name;
  }
}

TEST(MedianSolver, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(6);
  for (const auto& fam : catalog()) {
    std::vector<Vector> thetas, means;
    std::vector<double> w;
    for (int i = 0; i < 5; ++i) {
      thetas.push_back(random_natural_point(fam, rng).vec());
      means.push_back(fam.G.gradient(thetas.back()));
      w.push_back(1.0 + i);
    }
    for (int i = 0; i < 10; ++i) {
      const Vector t = random_natural_point(fam, rng).vec();
      const Vector mu = fam.G.gradient(t);
      auto obj_mean = [&](const Vector& v) { return median_objective(fam, means, w, MedianSpace::mean, v); };
      auto obj_nat = [&](const Vector& v) { return median_objective(fam, thetas, w, MedianSpace::natural, v); };
      EXPECT_LE(oracle::relative_error(median_gradient(fam, means, w, MedianSpace::mean, mu),
                                       oracle::fd_gradient(obj_mean, mu)),
                1e-5)
          << fam.name;
      EXPECT_LE(oracle::relative_error(median_gradient(fam, thetas, w, MedianSpace::natural, t),
                                       oracle::fd_gradient(obj_nat, t)),
                1e-5)
          << fam.name;
    }
  }
}

TEST(Nonconjugate, ReducesToTheConjugateObjectiveWhenQEqualsG) {
  const FamilySpec b = make_family("bernoulli");
  const std::vector<NaturalParam> duals = {NaturalParam{-0.4}, NaturalParam{1.1}};
  const NaturalParam prior{0.3};
  const double beta = 2.5;
  for (double t : {-1.0, 0.2, 0.9}) {
    const double mu = oracle::logistic(t);
    double expected = beta * oracle::binary_kl(oracle::logistic(0.3), mu);
    for (const auto& d : duals) expected += oracle::binary_kl(oracle::logistic(d[0]), mu);
    EXPECT_NEAR(objective_nonconjugate(b.G, b.G, NaturalParam{t}, duals, prior, beta), expected, 1e-12);
  }
}

TEST(Nonconjugate, VanishesWhenEveryPointCoincides) {
  const FamilySpec b = make_family("bernoulli");
  const std::vector<NaturalParam> duals = {NaturalParam{0.7}, NaturalParam{0.7}};
  const FamilySpec g = make_family("gaussian_fixed_variance");
  EXPECT_EQ(objective_nonconjugate(b.G, g.G, NaturalParam{0.7}, duals, NaturalParam{0.7}, 3.0), 0.0);
}

TEST(Nonconjugate, ClosedFormNoLongerApplies) {
  const ConvexFunction& G = make_family("bernoulli").G;
  const ConvexFunction& Q = make_family("gaussian_fixed_variance").G;
  const std::vector<NaturalParam> duals = {NaturalParam{0.0}};
  const NaturalParam prior{1.0};
  auto obj = [&](double t) { return objective_nonconjugate(G, Q, NaturalParam{t}, duals, prior, 1.0); };
  const double grid = oracle::grid_argmin(obj, -4.0, 4.0, 1e-4);
  const double predicted = oracle::logit((0.5 + oracle::logistic(1.0)) / 2.0);
  EXPECT_GT(std::abs(grid - predicted), 1e-3);
  const NonconjugateFit fit = minimize_nonconjugate(G, Q, duals, prior, 1.0);
  EXPECT_NEAR(fit.theta_hat[0], grid, 1e-4);
}

TEST(Nonconjugate, GradientMatchesFiniteDifferences) {
  const ConvexFunction& G = make_family("poisson").G;
  const ConvexFunction& Q = make_family("gaussian_fixed_variance").G;
  const std::vector<NaturalParam> duals = {NaturalParam{0.3}, NaturalParam{-0.8}, NaturalParam{1.2}};
  const NaturalParam prior{0.5};
  for (double t : {-1.5, 0.0, 0.4, 1.7}) {
    const Vector x = make_vector({t});
    const Vector fd = oracle::fd_gradient(
        [&](const Vector& v) { return objective_nonconjugate(G, Q, NaturalParam(v), duals, prior, 2.0); }, x);
    EXPECT_LE(oracle::relative_error(nonconjugate_gradient(G, Q, NaturalParam(x), duals, prior, 2.0), fd),
              1e-5);
  }
}

TEST(Nonconjugate, Errors) {
  const ConvexFunction& G = make_family("exponential").G;
  const ConvexFunction& Q = make_family("gaussian_fixed_variance").G;
  const std::vector<NaturalParam> duals = {NaturalParam{-1.0}};
  EXPECT_THROW(objective_nonconjugate(G, Q, NaturalParam{0.5}, duals, NaturalParam{-1.0}, 1.0),
               DomainError);
  EXPECT_THROW(objective_nonconjugate(G, Q, NaturalParam{-0.5}, duals, NaturalParam{-1.0}, 0.0),
               HyperparamError);
}

}  // namespace
}  // namespace expgeo
