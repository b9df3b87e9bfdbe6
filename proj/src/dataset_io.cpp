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

#include "expgeo/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "expgeo/errors.hpp"

namespace expgeo {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

// Rows of fields with the header (if any) removed; blank lines skipped.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(std::istream& in,
                                                                        HeaderMode header,
                                                                        bool allow_empty_last) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(trim(line));
    if (first) {
      first = false;
      bool is_header = header == HeaderMode::present;
      if (header == HeaderMode::automatic) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
          const bool may_be_empty = allow_empty_last && i + 1 == fields.size();
          if (!parse_double(fields[i]) && !(may_be_empty && fields[i].empty())) is_header = true;
        }
      }
      if (is_header) continue;
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace

Dataset read_dataset_csv(std::istream& in, const CsvOptions& options) {
  Dataset data;
  std::vector<int> labels;
  std::optional<bool> labelled;
  for (const auto& [line_no, fields] : read_rows(in, options.header, false)) {
    std::size_t coords = fields.size();
    bool has_label = false;
    if (options.dimension) {
      const auto d = static_cast<std::size_t>(*options.dimension);
      if (fields.size() == d + 1) {
        has_label = true;
        coords = d;
      } else if (fields.size() != d) {
        throw DataError(where(line_no) + "expected " + std::to_string(d) + " or " +
                        std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
      }
    } else if (!data.points.empty() && fields.size() != static_cast<std::size_t>(data.points[0].size())) {
      throw DataError(where(line_no) + "ragged row");
    }
    if (labelled && *labelled != has_label) throw DataError(where(line_no) + "label column is inconsistent");
    labelled = has_label;

    Vector point(static_cast<Eigen::Index>(coords));
    for (std::size_t j = 0; j < coords; ++j) {
      auto v = parse_double(fields[j]);
      if (!v) throw DataError(where(line_no) + "not a number: '" + fields[j] + "'");
      point[static_cast<Eigen::Index>(j)] = *v;
    }
    if (has_label) {
      auto v = parse_double(fields.back());
      if (!v || *v != static_cast<int>(*v)) {
        throw DataError(where(line_no) + "label must be an integer: '" + fields.back() + "'");
      }
      labels.push_back(static_cast<int>(*v));
    }
    data.points.push_back(std::move(point));
  }
  if (labelled.value_or(false)) data.labels = std::move(labels);
  return data;
}

Dataset read_dataset_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  return read_dataset_csv(in, options);
}

LabeledBinaryDataset read_labeled_binary_csv(std::istream& in, HeaderMode header) {
  LabeledBinaryDataset data;
  for (const auto& [line_no, fields] : read_rows(in, header, true)) {
    if (fields.size() < 2) throw DataError(where(line_no) + "need features and a label column");
    if (!data.features.empty() && fields.size() != data.features[0].size() + 1) {
      throw DataError(where(line_no) + "ragged row");
    }
    std::vector<std::uint8_t> x;
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
      auto v = parse_double(fields[j]);
      if (!v || (*v != 0.0 && *v != 1.0)) {
        throw DataError(where(line_no) + "feature must be 0 or 1: '" + fields[j] + "'");
      }
      x.push_back(static_cast<std::uint8_t>(*v));
    }
    std::optional<int> label;
    if (!fields.back().empty()) {
      auto v = parse_double(fields.back());
      if (!v || (*v != 0.0 && *v != 1.0)) {
        throw DataError(where(line_no) + "label must be 0, 1 or empty: '" + fields.back() + "'");
      }
      label = static_cast<int>(*v);
    }
    data.features.push_back(std::move(x));
    data.labels.push_back(label);
  }
  return data;
}

LabeledBinaryDataset read_labeled_binary_csv_file(const std::string& path, HeaderMode header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  return read_labeled_binary_csv(in, header);
}

void write_labeled_binary_csv(std::ostream& out, const LabeledBinaryDataset& data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (auto v : data.features[i]) out << static_cast<int>(v) << ',';
    if (data.labels[i]) out << *data.labels[i];
    out << '\n';
  }
}

}  // namespace expgeo
