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

#include "expgeo/expfam.hpp"
#include "expgeo/types.hpp"

namespace expgeo {

/// Hyperparameters (alpha, beta) of the conjugate prior
/// exp(<theta, alpha> - beta G(theta)): beta pseudo-observations located at
/// alpha / beta in the mean space. Validated on construction.
class ConjugateHyperparams {
 public:
  /// Throws HyperparamError unless beta > 0 and alpha / beta lies in the
  /// closure of the family's mean space.
  ConjugateHyperparams(const FamilySpec& fam, Vector alpha, double beta);

  /// Prior whose pseudo-observations sit at `location` with weight `beta`.
  static ConjugateHyperparams at(const FamilySpec& fam, const MeanParam& location, double beta);

  const Vector& alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// alpha / beta.
  MeanParam pseudo_mean() const { return MeanParam(alpha_ / beta_); }

 private:
  ConjugateHyperparams(Vector alpha, double beta) : alpha_(std::move(alpha)), beta_(beta) {}
  friend ConjugateHyperparams posterior_update(const ConjugateHyperparams&, const Dataset&);

  Vector alpha_;
  double beta_;
};

struct LogPrior {
  double value = 0.0;
  /// False when the normalizer log m(alpha, beta) was not added.
  bool normalized = false;
};

/// <theta, alpha> - beta G(theta) + log m(alpha, beta). The normalizer is
/// exact for the fixed-variance Gaussian and the Bernoulli (logistic-Beta)
/// families; elsewhere it is omitted and `normalized` is false.
LogPrior log_prior(const FamilySpec& fam, const NaturalParam& theta, const ConjugateHyperparams& hp);

/// beta (F(alpha/beta) - B_F(alpha/beta || grad G(theta))): the unnormalized
/// log prior computed through the mean-space geometry.
double log_prior_bregman(const FamilySpec& fam, const NaturalParam& theta,
                         const ConjugateHyperparams& hp);

/// log m(alpha, beta) when it has a closed form here.
std::optional<double> log_normalizer(const FamilySpec& fam, const ConjugateHyperparams& hp);

/// (alpha + sum phi(x_i), beta + n).
ConjugateHyperparams posterior_update(const ConjugateHyperparams& hp, const Dataset& data);

/// Mode of the prior in natural coordinates: (grad G)^-1(alpha / beta).
NaturalParam prior_mode(const FamilySpec& fam, const ConjugateHyperparams& hp);

}  // namespace expgeo
