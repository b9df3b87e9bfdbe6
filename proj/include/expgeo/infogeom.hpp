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

#include "expgeo/expfam.hpp"

namespace expgeo {

/// Fisher information metric M(theta) = Hessian of the log-partition.
struct MetricAtPoint {
  NaturalParam theta;
  Matrix matrix;
};

/// Analytic Hessian of G where the family supplies one, central finite
/// differences of grad G otherwise. Throws DomainError off the interior and
/// Error if the result is not symmetric positive definite.
MetricAtPoint fisher_metric(const FamilySpec& fam, const NaturalParam& theta);

/// Monte-Carlo comparison of the metric with the empirical covariance of the
/// sufficient statistics.
struct FisherMcReport {
  MetricAtPoint metric;
  Matrix empirical_covariance;
  Matrix standard_errors;  // of each covariance entry
  Matrix deviations;       // |empirical - metric|
  std::size_t samples = 0;
  bool all_within_three_se = false;
};

/// Requires n >= 10^4.
FisherMcReport fisher_mc_check(const FamilySpec& fam, const NaturalParam& theta, std::size_t n,
                               std::uint64_t seed);

}  // namespace expgeo
