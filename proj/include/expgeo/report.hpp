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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "expgeo/types.hpp"

namespace expgeo {

using Json = nlohmann::ordered_json;

/// Wall-clock facts about a run. Never part of determinism comparisons.
struct RunTiming {
  std::string timestamp;  // ISO-8601 UTC
  double wall_time_seconds = 0.0;

  bool operator==(const RunTiming&) const = default;
};

/// Machine-readable record of one CLI invocation.
struct RunReport {
  std::vector<std::string> command;  // argument vector, program name excluded
  std::string family;
  Json inputs = Json::object();
  std::optional<std::vector<double>> mu_hat;
  std::optional<std::vector<double>> theta_hat;
  std::optional<double> objective;
  Json diagnostics = Json::object();
  std::string status = "ok";  // ok | check_failed | error
  std::optional<RunTiming> timing;

  bool operator==(const RunReport&) const = default;
};

/// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
Json number_to_json(double value);
double number_from_json(const Json& value);
Json vector_to_json(const Vector& v);

Json to_json(const RunReport& report, bool include_timing = true);
RunReport report_from_json(const Json& json);

/// Two-space indented JSON followed by a newline.
std::string serialize(const RunReport& report, bool include_timing = true);
/// Throws DataError on malformed input.
RunReport parse_report(const std::string& text);

}  // namespace expgeo
