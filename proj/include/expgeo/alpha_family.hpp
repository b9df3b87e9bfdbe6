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

#include <vector>

#include "expgeo/convex.hpp"
#include "expgeo/types.hpp"

namespace expgeo {

/// Index of the alpha-divergence, restricted to [-1, 1].
class AlphaIndex {
 public:
  /// Throws ConfigError when |alpha| > 1 or alpha is not finite.
  explicit AlphaIndex(double alpha);
  double value() const { return alpha_; }
  bool is_limit() const { return alpha_ == 1.0 || alpha_ == -1.0; }

 private:
  double alpha_;
};

/// Zhang's convexity-gap divergence
///   4 / (1 - a^2) [ (1-a)/2 G(t1) + (1+a)/2 G(t2) - G((1-a)/2 t1 + (1+a)/2 t2) ].
/// At a = 1 it is B_G(t1 || t2), at a = -1 it is B_G(t2 || t1).
double alpha_divergence(const ConvexFunction& G, const NaturalParam& theta1,
                        const NaturalParam& theta2, AlphaIndex alpha);

struct AlphaLimitDiagnostic {
  std::vector<double> alphas;          // 1 - 10^-k, k = 2..5
  std::vector<double> gaps;            // |D^a - B_G(t1 || t2)|
  std::vector<double> mirrored_gaps;   // |D^-a - B_G(t2 || t1)|
  double bregman_forward = 0.0;        // B_G(t1 || t2)
  double bregman_reverse = 0.0;        // B_G(t2 || t1)
  bool decreasing = false;             // both gap sequences nonincreasing
  bool within_tolerance = false;       // final gaps <= 1e-3 (1 + B_G)
  bool passed() const { return decreasing && within_tolerance; }
};

AlphaLimitDiagnostic alpha_limit_check(const ConvexFunction& G, const NaturalParam& theta1,
                                       const NaturalParam& theta2);

}  // namespace expgeo
