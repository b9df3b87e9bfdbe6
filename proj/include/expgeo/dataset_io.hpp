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

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "expgeo/expfam.hpp"
#include "expgeo/hybrid.hpp"

namespace expgeo {

enum class HeaderMode { automatic, present, absent };

struct CsvOptions {
  /// automatic: the first row is a header iff it has a non-numeric field.
  HeaderMode header = HeaderMode::automatic;
  /// Sufficient-statistic dimension. When set, a row of dimension + 1 fields
  /// carries an integer label in its last column.
  std::optional<int> dimension;
};

/// One observation per row: comma-separated sufficient-statistic coordinates,
/// optionally followed by an integer label. Throws DataError.
Dataset read_dataset_csv(std::istream& in, const CsvOptions& options = {});
Dataset read_dataset_csv_file(const std::string& path, const CsvOptions& options = {});

/// Binary feature columns followed by a label column; an empty label field
/// marks an unlabeled row. Throws DataError.
LabeledBinaryDataset read_labeled_binary_csv(std::istream& in,
                                             HeaderMode header = HeaderMode::automatic);
LabeledBinaryDataset read_labeled_binary_csv_file(const std::string& path,
                                                  HeaderMode header = HeaderMode::automatic);
void write_labeled_binary_csv(std::ostream& out, const LabeledBinaryDataset& data);

}  // namespace expgeo
