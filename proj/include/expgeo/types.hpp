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

#include <Eigen/Core>

#include <initializer_list>
#include <utility>

namespace expgeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Coordinates tagged by the chart they live in, so natural and mean
// parameters cannot be mixed up silently.
template <class Tag>
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(Vector v) : v_(std::move(v)) {}
  Coordinates(std::initializer_list<double> values) : v_(make_vector(values)) {}

  const Vector& vec() const { return v_; }
  Eigen::Index size() const { return v_.size(); }
  double operator[](Eigen::Index i) const { return v_[i]; }

 private:
  Vector v_;
};

struct NaturalTag {};
struct MeanTag {};

/// A point of the natural (canonical) parameter space.
using NaturalParam = Coordinates<NaturalTag>;
/// A point of the mean parameter space.
using MeanParam = Coordinates<MeanTag>;

}  // namespace expgeo
