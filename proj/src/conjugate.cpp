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

#include "expgeo/conjugate.hpp"

#include <cmath>
#include <numbers>

#include "expgeo/errors.hpp"

namespace expgeo {

ConjugateHyperparams::ConjugateHyperparams(const FamilySpec& fam, Vector alpha, double beta)
    : alpha_(std::move(alpha)), beta_(beta) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw HyperparamError("beta must be a positive finite number");
  }
  if (alpha_.size() != fam.dimension || !alpha_.allFinite()) {
    throw HyperparamError("alpha must be a finite vector of dimension " +
                          std::to_string(fam.dimension));
  }
  if (!fam.mean_domain().closure_contains(alpha_ / beta_)) {
    throw HyperparamError("alpha / beta lies outside the mean space of " + fam.name);
  }
}

ConjugateHyperparams ConjugateHyperparams::at(const FamilySpec& fam, const MeanParam& location,
                                              double beta) {
  return ConjugateHyperparams(fam, beta * location.vec(), beta);
}

std::optional<double> log_normalizer(const FamilySpec& fam, const ConjugateHyperparams& hp) {
  if (fam.name == "gaussian_fixed_variance") {
    // Gaussian in theta with precision beta s2 and mean alpha / (beta s2).
    const double precision = hp.beta() * fam.constants.variance;
    const double a = hp.alpha()[0];
    return 0.5 * std::log(precision / (2.0 * std::numbers::pi)) - a * a / (2.0 * precision);
  }
  if (fam.name == "bernoulli") {
    // a = logistic(theta) ~ Beta(alpha, beta - alpha); improper on the boundary.
    const double a = hp.alpha()[0], b = hp.beta() - hp.alpha()[0];
    if (!(a > 0.0) || !(b > 0.0)) return std::nullopt;
    return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  }
  return std::nullopt;
}

LogPrior log_prior(const FamilySpec& fam, const NaturalParam& theta, const ConjugateHyperparams& hp) {
  if (theta.size() != fam.dimension || !fam.natural_domain().contains(theta.vec())) {
    throw DomainError("theta", "outside the natural parameter space of " + fam.name);
  }
  LogPrior out;
  out.value = theta.vec().dot(hp.alpha()) - hp.beta() * fam.G.value(theta.vec());
  if (auto log_m = log_normalizer(fam, hp)) {
    out.value += *log_m;
    out.normalized = true;
  }
  return out;
}

double log_prior_bregman(const FamilySpec& fam, const NaturalParam& theta,
                         const ConjugateHyperparams& hp) {
  if (theta.size() != fam.dimension || !fam.natural_domain().contains(theta.vec())) {
    throw DomainError("theta", "outside the natural parameter space of " + fam.name);
  }
  const Vector location = hp.pseudo_mean().vec();
  const Vector mu = fam.G.gradient(theta.vec());
  return hp.beta() * (fam.F.value(location) - bregman(fam.F, location, mu));
}

ConjugateHyperparams posterior_update(const ConjugateHyperparams& hp, const Dataset& data) {
  if (data.empty()) return hp;
  return ConjugateHyperparams(hp.alpha() + data.sum(), hp.beta() + static_cast<double>(data.n()));
}

NaturalParam prior_mode(const FamilySpec& fam, const ConjugateHyperparams& hp) {
  return fam.to_natural(hp.pseudo_mean());
}

}  // namespace expgeo
