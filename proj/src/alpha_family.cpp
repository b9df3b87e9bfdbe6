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

#include "expgeo/alpha_family.hpp"

#include <cmath>
#include <limits>

#include "expgeo/errors.hpp"

namespace expgeo {

AlphaIndex::AlphaIndex(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || std::abs(alpha) > 1.0) {
    throw ConfigError("alpha index must lie in [-1, 1]");
  }
}

double alpha_divergence(const ConvexFunction& G, const NaturalParam& theta1,
                        const NaturalParam& theta2, AlphaIndex alpha) {
  const Vector& t1 = theta1.vec();
  const Vector& t2 = theta2.vec();
  if (!G.domain().contains(t1)) throw DomainError("theta1", "outside the domain of G");
  if (!G.domain().contains(t2)) throw DomainError("theta2", "outside the domain of G");
  const double a = alpha.value();
  // Explicit branches: the general formula is 0/0 at |a| = 1.
  if (a == 1.0) return bregman(G, t1, t2);
  if (a == -1.0) return bregman(G, t2, t1);

  const double w1 = 0.5 * (1.0 - a), w2 = 0.5 * (1.0 + a);
  const Vector mix = w1 * t1 + w2 * t2;
  if (!G.domain().contains(mix)) throw DomainError("mixture", "outside the domain of G");
  const double gap = w1 * G.value(t1) + w2 * G.value(t2) - G.value(mix);
  return std::max(0.0, gap / (w1 * w2));
}

AlphaLimitDiagnostic alpha_limit_check(const ConvexFunction& G, const NaturalParam& theta1,
                                       const NaturalParam& theta2) {
  AlphaLimitDiagnostic out;
  out.bregman_forward = bregman(G, theta1.vec(), theta2.vec());
  out.bregman_reverse = bregman(G, theta2.vec(), theta1.vec());
  for (int k = 2; k <= 5; ++k) {
    const double a = 1.0 - std::pow(10.0, -k);
    out.alphas.push_back(a);
    out.gaps.push_back(
        std::abs(alpha_divergence(G, theta1, theta2, AlphaIndex(a)) - out.bregman_forward));
    out.mirrored_gaps.push_back(
        std::abs(alpha_divergence(G, theta1, theta2, AlphaIndex(-a)) - out.bregman_reverse));
  }
  // A rise smaller than the rounding error of the convexity gap at alpha_i
  // (which grows like eps / (1 - alpha^2)) does not count against monotonicity.
  const double magnitude =
      std::abs(G.value(theta1.vec())) + std::abs(G.value(theta2.vec())) + 1.0;
  out.decreasing = true;
  for (std::size_t i = 1; i < out.gaps.size(); ++i) {
    const double a = out.alphas[i];
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * magnitude / (1.0 - a * a);
    out.decreasing = out.decreasing && out.gaps[i] <= out.gaps[i - 1] + noise &&
                     out.mirrored_gaps[i] <= out.mirrored_gaps[i - 1] + noise;
  }
  out.within_tolerance = out.gaps.back() <= 1e-3 * (1.0 + out.bregman_forward) &&
                         out.mirrored_gaps.back() <= 1e-3 * (1.0 + out.bregman_reverse);
  return out;
}

}  // namespace expgeo
