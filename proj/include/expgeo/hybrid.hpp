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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "expgeo/conjugate.hpp"
#include "expgeo/expfam.hpp"

namespace expgeo {

/// Binary feature vectors with binary labels; a missing label marks an
/// unlabeled (semi-supervised) row.
struct LabeledBinaryDataset {
  std::vector<std::vector<std::uint8_t>> features;
  std::vector<std::optional<int>> labels;

  std::size_t size() const { return features.size(); }
  int feature_count() const { return features.empty() ? 0 : static_cast<int>(features[0].size()); }
  std::size_t labeled_count() const;
};

/// Throws DataError on ragged rows, non-binary entries, or labels outside {0, 1}.
void validate(const LabeledBinaryDataset& data);

/// Joint Bernoulli naive-Bayes family over (x, y) with m binary features.
///
/// Natural coordinates (dimension 2m + 1):
///   [0, m)       feature weights for class 0
///   [m, 2m)      feature weights for class 1
///   2m           class weight
/// T(x, y) places x in the block of class y and sets the last coordinate to y.
/// Raw observations for `suff_stat` are (x_1, ..., x_m, y).
FamilySpec joint_family(int m);

/// T(x, y).
Vector joint_statistic(std::span<const std::uint8_t> x, int y);

/// log p(y | x, theta_d) for the logistic-regression view of the joint
/// family. G(theta_d) cancels in the ratio and is never evaluated.
double log_discriminative(const NaturalParam& theta_d, std::span<const std::uint8_t> x, int y,
                          const FamilySpec& fam);

/// log p(x | theta_g) = log sum_y p(x, y | theta_g).
double log_marginal(const NaturalParam& theta_g, std::span<const std::uint8_t> x,
                    const FamilySpec& fam);

/// -lambda B_G(theta_g || theta_d). The prior is placed on the generative
/// parameters, hence theta_g in the first argument.
double coupling_log_prior(const NaturalParam& theta_g, const NaturalParam& theta_d, double lambda,
                          const FamilySpec& fam);

/// Conjugate hyperparameters equivalent to the coupling:
/// alpha = lambda grad G(theta_d), beta = lambda. Requires lambda > 0.
ConjugateHyperparams coupling_hyperparams(const FamilySpec& fam, const NaturalParam& theta_d,
                                          double lambda);

struct HybridParams {
  NaturalParam theta_d;
  NaturalParam theta_g;
  double lambda = 0.0;  // +infinity ties the two parameter sets
};

struct HybridOptions {
  double gradient_tol = 1e-7;
  int max_iter = 1000;
};

struct HybridFit {
  HybridParams params;
  double objective = 0.0;  // maximized joint log-likelihood plus coupling
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// sum_labeled log p(y | x, theta_d) + sum_all log p(x | theta_g)
///   - lambda B_G(theta_g || theta_d).
double hybrid_objective(const LabeledBinaryDataset& data, const HybridParams& params);

/// Gradient of `hybrid_objective` as (d/d theta_d, d/d theta_g).
std::pair<Vector, Vector> hybrid_gradient(const LabeledBinaryDataset& data,
                                          const HybridParams& params);

/// Starting point shared by both parameter sets: the generative MAP fit of the
/// labeled rows under one pseudo-observation at the uniform joint.
NaturalParam hybrid_initial_point(const LabeledBinaryDataset& data);

/// Joint MAP training by damped Newton ascent with backtracking. lambda = +inf
/// fits a single tied parameter vector to the generative objective.
/// Throws DataError without a labeled row of each class and
/// ConvergenceError (carrying the best iterate) on max_iter.
HybridFit fit_hybrid(const LabeledBinaryDataset& data, double lambda,
                     const HybridOptions& options = {});

/// n rows drawn from the joint family at `theta`; each row loses its label
/// with probability `unlabeled_fraction`.
LabeledBinaryDataset synthetic_hybrid_data(const NaturalParam& theta, std::size_t n,
                                           double unlabeled_fraction, std::uint64_t seed);

/// A fixed, well-separated joint parameter for m features, used for demos
/// and synthetic experiments.
NaturalParam demo_joint_parameter(int m);

/// T(x, y) of every labeled row, as a Dataset over the joint family.
Dataset labeled_statistics(const LabeledBinaryDataset& data);

}  // namespace expgeo
