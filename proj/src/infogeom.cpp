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

#include "expgeo/infogeom.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "expgeo/errors.hpp"

namespace expgeo {

MetricAtPoint fisher_metric(const FamilySpec& fam, const NaturalParam& theta) {
  if (theta.size() != fam.dimension || !fam.natural_domain().contains(theta.vec())) {
    throw DomainError("theta", "not interior to the natural parameter space of " + fam.name);
  }
  Matrix m = fam.G.hessian(theta.vec());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error("Fisher metric is not symmetric");
  }
  m = 0.5 * (m + m.transpose());
  if (Eigen::LLT<Matrix>(m).info() != Eigen::Success) {
    throw Error("Fisher metric is not positive definite");
  }
  return MetricAtPoint{theta, m};
}

FisherMcReport fisher_mc_check(const FamilySpec& fam, const NaturalParam& theta, std::size_t n,
                               std::uint64_t seed) {
  if (n < 10000) throw ConfigError("Fisher Monte-Carlo check needs at least 10^4 samples");
  FisherMcReport report;
  report.metric = fisher_metric(fam, theta);
  report.samples = n;

  const Dataset data = sample(fam, theta, n, seed);
  const int d = fam.dimension;
  const double count = static_cast<double>(n);
  const Vector mean = data.sum() / count;

  Matrix cov = Matrix::Zero(d, d);
  Matrix fourth = Matrix::Zero(d, d);  // E[(x_i - m_i)^2 (x_j - m_j)^2]
  for (const auto& x : data.points) {
    const Vector c = x - mean;
    cov.noalias() += c * c.transpose();
    const Vector c2 = c.cwiseProduct(c);
    fourth.noalias() += c2 * c2.transpose();
  }
  cov /= count;
  fourth /= count;

  report.empirical_covariance = cov;
  report.standard_errors =
      ((fourth - cov.cwiseProduct(cov)).cwiseMax(0.0) / count).cwiseSqrt();
  report.deviations = (cov - report.metric.matrix).cwiseAbs();
  report.all_within_three_se =
      (report.deviations.array() <= 3.0 * report.standard_errors.array()).all();
  return report;
}

}  // namespace expgeo
