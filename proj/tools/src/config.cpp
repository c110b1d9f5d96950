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

#include "purify_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace purify::cli {

using nlohmann::ordered_json;

ordered_json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    ordered_json j = ordered_json::parse(in);
    if (!j.is_object()) throw ConfigError(path + ": top level must be an object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Fields::Fields(const ordered_json& object, std::string where)
    : object_(object), where_(std::move(where)) {
  if (!object_.is_object()) throw ConfigError(where_ + ": expected an object");
}

std::string Fields::path(const std::string& key) const {
  return where_.empty() ? key : where_ + "." + key;
}

bool Fields::has(const std::string& key) const { return object_.contains(key); }

const ordered_json& Fields::require(const std::string& key) const {
  used_.insert(key);
  if (!object_.contains(key)) {
    throw ConfigError("missing required field \"" + path(key) + "\"");
  }
  return object_.at(key);
}

const ordered_json& Fields::raw(const std::string& key) const { return require(key); }

double Fields::number(const std::string& key) const {
  const ordered_json& v = require(key);
  if (!v.is_number()) throw ConfigError("field \"" + path(key) + "\" must be a number");
  return v.get<double>();
}

double Fields::number(const std::string& key, double fallback) const {
  used_.insert(key);
  return has(key) ? number(key) : fallback;
}

long long Fields::integer(const std::string& key, long long fallback) const {
  used_.insert(key);
  if (!has(key)) return fallback;
  const ordered_json& v = object_.at(key);
  if (!v.is_number_integer()) throw ConfigError("field \"" + path(key) + "\" must be an integer");
  return v.get<long long>();
}

std::string Fields::text(const std::string& key) const {
  const ordered_json& v = require(key);
  if (!v.is_string()) throw ConfigError("field \"" + path(key) + "\" must be a string");
  return v.get<std::string>();
}

std::string Fields::text(const std::string& key, const std::string& fallback) const {
  used_.insert(key);
  return has(key) ? text(key) : fallback;
}

std::vector<double> Fields::numbers(const std::string& key) const {
  const ordered_json& v = require(key);
  if (!v.is_array()) throw ConfigError("field \"" + path(key) + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ConfigError("field \"" + path(key) + "\" must be an array of numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

Fields Fields::object(const std::string& key) const {
  const ordered_json& v = require(key);
  if (!v.is_object()) throw ConfigError("field \"" + path(key) + "\" must be an object");
  return Fields(v, path(key));
}

void Fields::finish() const {
  for (const auto& item : object_.items()) {
    if (!used_.contains(item.key())) {
      throw ConfigError("unknown field \"" + path(item.key()) + "\"");
    }
  }
}

NoiseConfig read_noise(const Fields& f) {
  NoiseConfig n;
  n.g2 = f.number("g2", 0.0);
  n.r1 = f.number("r1", 0.5);
  n.r2 = f.number("r2", 0.5);
  n.r_final = f.number("r_final", 0.5);
  n.sibling_overlap = f.number("sibling_overlap", 1.0);
  const std::string reference = f.text("reference", "distinguishable_arms");
  if (reference == "distinguishable_arms") {
    n.reference = ReferenceMode::kDistinguishableArms;
  } else if (reference == "removed_final_splitter") {
    n.reference = ReferenceMode::kRemovedFinalSplitter;
  } else {
    throw ConfigError("field \"reference\" must be distinguishable_arms or removed_final_splitter");
  }
  if (f.has("losses")) {
    const Fields l = f.object("losses");
    if (l.has("input")) n.losses.input = l.numbers("input");
    if (l.has("after_first")) n.losses.after_first = l.numbers("after_first");
    if (l.has("after_second")) n.losses.after_second = l.numbers("after_second");
    if (l.has("output")) n.losses.output = l.numbers("output");
    l.finish();
  }
  try {
    n.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return n;
}

double read_overlap(const Fields& f) {
  const bool c = f.has("c");
  const bool raw = f.has("raw_visibility");
  if (c == raw) throw ConfigError("give exactly one of \"c\" or \"raw_visibility\"");
  if (c) return f.number("c");
  const double v = f.number("raw_visibility");
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("field \"raw_visibility\" outside [0, 1]");
  return std::sqrt(v);
}

}  // namespace purify::cli
