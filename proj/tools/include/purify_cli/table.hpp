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

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace purify::cli {

using Cell = std::variant<std::monostate, double, long long, std::string>;

/// A result table plus the provenance printed in front of it.
struct Table {
  std::string command;
  nlohmann::ordered_json input;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { kCsv, kJson };

/// CSV: '#' comment block echoing the input, a header row, then one line per
/// row. JSON: {"command", "input", "notes", "columns", "rows"}.
std::string render(const Table& table, Format format);

}  // namespace purify::cli
