// Copyright 2026 The ncmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "ncmetro/cli_io.hpp"
#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

using Json = nlohmann::ordered_json;

bool same_number(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_number(const Json& j) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) throw ValidationError("envelope number expected");
  return j.get<double>();
}

Json pairs(const std::vector<std::pair<std::string, std::string>>& v) {
  Json out = Json::object();
  for (const auto& [k, value] : v) out[k] = value;
  return out;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, value] : j.items()) out.emplace_back(k, value.get<std::string>());
  return out;
}

}  // namespace

bool ResultEnvelope::operator==(const ResultEnvelope& o) const {
  if (schema_version != o.schema_version || command != o.command || config != o.config ||
      columns != o.columns || labels != o.labels || trusted != o.trusted ||
      trust_notes != o.trust_notes || timestamp != o.timestamp ||
      !same_number(duration_seconds, o.duration_seconds) || rows.size() != o.rows.size() ||
      scalars.size() != o.scalars.size()) {
    return false;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != o.rows[i].size()) return false;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (!same_number(rows[i][j], o.rows[i][j])) return false;
    }
  }
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (scalars[i].first != o.scalars[i].first ||
        !same_number(scalars[i].second, o.scalars[i].second)) {
      return false;
    }
  }
  return true;
}

std::string to_csv(const ResultEnvelope& e) {
  std::string out;
  if (!e.columns.empty()) {
    for (std::size_t c = 0; c < e.columns.size(); ++c) {
      out += (c ? "," : "") + csv_field(e.columns[c]);
    }
    out += '\n';
    for (const auto& row : e.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_number(row[c]);
      out += '\n';
    }
    return out;
  }
  out += "name,value\n";
  for (const auto& [k, v] : e.scalars) out += csv_field(k) + "," + csv_number(v) + "\n";
  for (const auto& [k, v] : e.labels) out += csv_field(k) + "," + csv_field(v) + "\n";
  return out;
}

std::string to_json(const ResultEnvelope& e) {
  Json j;
  j["schema_version"] = e.schema_version;
  j["command"] = e.command;
  j["config"] = pairs(e.config);
  j["columns"] = e.columns;
  Json rows = Json::array();
  for (const auto& row : e.rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(number(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  Json scalars = Json::object();
  for (const auto& [k, v] : e.scalars) scalars[k] = number(v);
  j["scalars"] = std::move(scalars);
  j["labels"] = pairs(e.labels);
  j["trusted"] = e.trusted;
  j["trust_notes"] = e.trust_notes;
  j["duration_seconds"] = number(e.duration_seconds);
  j["timestamp"] = e.timestamp;
  return j.dump(2) + "\n";
}

ResultEnvelope envelope_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed envelope JSON: ") + ex.what());
  }
  try {
    ResultEnvelope e;
    e.schema_version = j.at("schema_version").get<int>();
    if (e.schema_version != ResultEnvelope::kSchemaVersion) {
      throw ValidationError(fmt::format("unsupported envelope schema_version {}", e.schema_version));
    }
    e.command = j.at("command").get<std::string>();
    e.config = read_pairs(j.at("config"));
    e.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<double> row;
      for (const auto& v : r) row.push_back(read_number(v));
      e.rows.push_back(std::move(row));
    }
    for (const auto& [k, v] : j.at("scalars").items()) e.scalars.emplace_back(k, read_number(v));
    e.labels = read_pairs(j.at("labels"));
    e.trusted = j.at("trusted").get<bool>();
    e.trust_notes = j.at("trust_notes").get<std::vector<std::string>>();
    e.duration_seconds = read_number(j.at("duration_seconds"));
    e.timestamp = j.at("timestamp").get<std::string>();
    return e;
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed envelope: ") + ex.what());
  }
}

void emit(const ResultEnvelope& envelope, const RunConfig& config, std::ostream& out) {
  const std::string text =
      config.format == OutputFormat::Json ? to_json(envelope) : to_csv(envelope);
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(fmt::format("cannot open '{}' for writing", config.out_path));
  file << text;
  if (!file.flush()) throw Error(fmt::format("failed writing '{}'", config.out_path));
}

}  // namespace ncmetro
