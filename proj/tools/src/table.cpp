// Copyright 2026 The purify Authors
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

#include "purify_cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace purify::cli {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string render(const Table& table, Format format) {
  std::ostringstream out;
  if (format == Format::kCsv) {
    out << "# purify " << table.command << '\n';
    if (!table.input.empty()) out << "# input = " << table.input.dump() << '\n';
    for (const auto& [key, value] : table.notes) out << "# " << key << " = " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << csv_field(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
      out << '\n';
    }
    return out.str();
  }
  nlohmann::ordered_json j;
  j["command"] = table.command;
  j["input"] = table.input;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.notes) notes[key] = value;
  j["notes"] = notes;
  j["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = json_cell(row[c]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace purify::cli
