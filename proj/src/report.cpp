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

#include "expgeo/report.hpp"

#include <cmath>
#include <limits>

#include "expgeo/errors.hpp"

namespace expgeo {

namespace {

Json doubles_to_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number_to_json(v));
  return out;
}

std::vector<double> doubles_from_json(const Json& json) {
  std::vector<double> out;
  for (const auto& v : json) out.push_back(number_from_json(v));
  return out;
}

}  // namespace

Json number_to_json(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double number_from_json(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DataError("expected a number, got " + value.dump());
}

Json vector_to_json(const Vector& v) {
  return doubles_to_json(std::vector<double>(v.data(), v.data() + v.size()));
}

Json to_json(const RunReport& report, bool include_timing) {
  Json j;
  j["command"] = report.command;
  j["family"] = report.family;
  j["inputs"] = report.inputs;
  if (report.mu_hat || report.theta_hat) {
    Json est = Json::object();
    if (report.mu_hat) est["mu_hat"] = doubles_to_json(*report.mu_hat);
    if (report.theta_hat) est["theta_hat"] = doubles_to_json(*report.theta_hat);
    j["estimates"] = est;
  }
  if (report.objective) j["objective"] = number_to_json(*report.objective);
  j["diagnostics"] = report.diagnostics;
  j["status"] = report.status;
  if (include_timing && report.timing) {
    j["timing"] = {{"timestamp", report.timing->timestamp},
                   {"wall_time_seconds", report.timing->wall_time_seconds}};
  }
  return j;
}

RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::vector<std::string>>();
    r.family = j.at("family").get<std::string>();
    r.inputs = j.at("inputs");
    if (j.contains("estimates")) {
      const Json& est = j["estimates"];
      if (est.contains("mu_hat")) r.mu_hat = doubles_from_json(est["mu_hat"]);
      if (est.contains("theta_hat")) r.theta_hat = doubles_from_json(est["theta_hat"]);
    }
    if (j.contains("objective")) r.objective = number_from_json(j["objective"]);
    r.diagnostics = j.at("diagnostics");
    r.status = j.at("status").get<std::string>();
    if (j.contains("timing")) {
      r.timing = RunTiming{j["timing"].at("timestamp").get<std::string>(),
                           j["timing"].at("wall_time_seconds").get<double>()};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string serialize(const RunReport& report, bool include_timing) {
  return to_json(report, include_timing).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("report is not valid JSON");
  return report_from_json(j);
}

}  // namespace expgeo
