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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "purify/common.hpp"
#include "purify/protocol.hpp"

namespace purify::cli {

/// Malformed or incomplete configuration; maps to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

nlohmann::ordered_json load_config(const std::string& path);

/// Typed field access on one JSON object. Every accessor records the key;
/// finish() rejects keys nobody asked for, so typos do not pass silently.
class Fields {
 public:
  Fields(const nlohmann::ordered_json& object, std::string where);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  Fields object(const std::string& key) const;
  const nlohmann::ordered_json& raw(const std::string& key) const;

  void finish() const;

 private:
  const nlohmann::ordered_json& require(const std::string& key) const;
  std::string path(const std::string& key) const;

  const nlohmann::ordered_json& object_;
  std::string where_;
  mutable std::set<std::string> used_;
};

/// Reads g2, r1, r2, r_final, sibling_overlap, reference and losses.
NoiseConfig read_noise(const Fields& f);

/// Overlap amplitude from exactly one of "c" or "raw_visibility" (c^2).
double read_overlap(const Fields& f);

}  // namespace purify::cli
