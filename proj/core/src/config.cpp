/*
 * Copyright 2026 tcsim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tcsim/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tcsim {

using nlohmann::json;

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.l1i = CacheGeometry{"L1I", 32 * 1024, 64, 8, 2};
  cfg.l1d = CacheGeometry{"L1D", 32 * 1024, 64, 8, 2};
  cfg.lower_levels = {CacheGeometry{"LLC", 2 * 1024 * 1024, 64, 16, 20}};
  return cfg;
}

void RunConfig::validate() const {
  l1i.validate();
  l1d.validate();
  if (lower_levels.empty())
    throw ConfigError("lower_levels: at least one unified level is required");
  for (const auto& g : lower_levels) g.validate();

  uint32_t line = l1i.line_bytes;
  if (l1d.line_bytes != line)
    throw ConfigError("l1d.line_size: all caches must share one line size");
  uint32_t prev_latency = std::max(l1i.hit_latency, l1d.hit_latency);
  for (const auto& g : lower_levels) {
    if (g.line_bytes != line)
      throw ConfigError("cache '" + g.name + "': line_size: all caches must share one line size");
    if (g.hit_latency < prev_latency)
      throw ConfigError("cache '" + g.name +
                        "': hit_latency: must not decrease down the hierarchy");
    prev_latency = g.hit_latency;
  }
  if (memory_latency <= prev_latency)
    throw ConfigError("memory_latency: must exceed every cache hit latency");
  if (num_hw_contexts == 0) throw ConfigError("num_hw_contexts: must be positive");
  if (timestamp_bits == 0 || timestamp_bits > 64)
    throw ConfigError("timestamp_bits: must be in [1,64]");
  if (hit_threshold) {
    if (*hit_threshold <= l1d.hit_latency || *hit_threshold >= memory_latency)
      throw ConfigError("hit_threshold: must lie between the L1D hit latency and memory latency");
  }
}

bool RunConfig::same_machine(const RunConfig& other) const {
  auto geom_eq = [](const CacheGeometry& a, const CacheGeometry& b) {
    return a.size_bytes == b.size_bytes && a.line_bytes == b.line_bytes && a.ways == b.ways &&
           a.hit_latency == b.hit_latency;
  };
  if (!geom_eq(l1i, other.l1i) || !geom_eq(l1d, other.l1d)) return false;
  if (lower_levels.size() != other.lower_levels.size()) return false;
  for (size_t i = 0; i < lower_levels.size(); ++i)
    if (!geom_eq(lower_levels[i], other.lower_levels[i])) return false;
  return memory_latency == other.memory_latency && num_hw_contexts == other.num_hw_contexts &&
         timestamp_bits == other.timestamp_bits;
}

uint64_t parse_size(const std::string& text) {
  if (text.empty()) throw ConfigError("size: empty value");
  size_t idx = 0;
  uint64_t value = 0;
  try {
    value = std::stoull(text, &idx);
  } catch (const std::exception&) {
    throw ConfigError("size: cannot parse '" + text + "'");
  }
  uint64_t mult = 1;
  if (idx < text.size()) {
    std::string suffix = text.substr(idx);
    if (suffix == "K" || suffix == "k" || suffix == "KiB")
      mult = 1024;
    else if (suffix == "M" || suffix == "m" || suffix == "MiB")
      mult = 1024 * 1024;
    else if (suffix == "G" || suffix == "g" || suffix == "GiB")
      mult = 1024ull * 1024 * 1024;
    else
      throw ConfigError("size: unknown suffix '" + suffix + "' in '" + text + "'");
  }
  return value * mult;
}

std::string format_size(uint64_t bytes) {
  if (bytes && bytes % (1024ull * 1024 * 1024) == 0)
    return std::to_string(bytes / (1024ull * 1024 * 1024)) + "G";
  if (bytes && bytes % (1024 * 1024) == 0) return std::to_string(bytes / (1024 * 1024)) + "M";
  if (bytes && bytes % 1024 == 0) return std::to_string(bytes / 1024) + "K";
  return std::to_string(bytes);
}

namespace {

uint64_t size_field(const json& j, const std::string& where) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.is_number_integer() && j.get<int64_t>() < 0)
      throw ConfigError(where + ": must be non-negative");
    return j.get<uint64_t>();
  }
  if (j.is_string()) return parse_size(j.get<std::string>());
  throw ConfigError(where + ": expected a byte count or a size string like \"32K\"");
}

uint32_t uint_field(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !j.is_number_integer())
    throw ConfigError(where + ": expected an integer");
  int64_t v = j.get<int64_t>();
  if (v < 0) throw ConfigError(where + ": must be non-negative");
  return uint32_t(v);
}

bool bool_field(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where + ": expected true or false");
  return j.get<bool>();
}

CacheGeometry geometry_from_json(const json& j, const std::string& where,
                                 const std::string& default_name) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  CacheGeometry g;
  g.name = default_name;
  g.line_bytes = 64;
  g.ways = 8;
  g.hit_latency = 0;
  bool have_size = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = where + "." + it.key();
    if (it.key() == "name") {
      if (!it.value().is_string()) throw ConfigError(key + ": expected a string");
      g.name = it.value().get<std::string>();
    } else if (it.key() == "size") {
      g.size_bytes = size_field(it.value(), key);
      have_size = true;
    } else if (it.key() == "line_size")
      g.line_bytes = uint_field(it.value(), key);
    else if (it.key() == "associativity")
      g.ways = uint_field(it.value(), key);
    else if (it.key() == "hit_latency")
      g.hit_latency = uint_field(it.value(), key);
    else
      throw ConfigError(key + ": unknown field");
  }
  if (!have_size) throw ConfigError(where + ".size: required");
  if (g.hit_latency == 0) throw ConfigError(where + ".hit_latency: required and positive");
  return g;
}

json geometry_to_json(const CacheGeometry& g) {
  return json{{"name", g.name},
              {"size", format_size(g.size_bytes)},
              {"line_size", g.line_bytes},
              {"associativity", g.ways},
              {"hit_latency", g.hit_latency}};
}

}  // namespace

RunConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig cfg = RunConfig::defaults();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "l1i")
      cfg.l1i = geometry_from_json(it.value(), "l1i", "L1I");
    else if (key == "l1d")
      cfg.l1d = geometry_from_json(it.value(), "l1d", "L1D");
    else if (key == "lower_levels") {
      if (!it.value().is_array() || it.value().empty())
        throw ConfigError("lower_levels: expected a non-empty array");
      cfg.lower_levels.clear();
      size_t n = it.value().size();
      for (size_t i = 0; i < n; ++i) {
        std::string where = "lower_levels[" + std::to_string(i) + "]";
        std::string def_name = (i + 1 == n) ? "LLC" : "L" + std::to_string(i + 2);
        cfg.lower_levels.push_back(geometry_from_json(it.value()[i], where, def_name));
      }
    } else if (key == "memory_latency")
      cfg.memory_latency = uint_field(it.value(), key);
    else if (key == "num_hw_contexts")
      cfg.num_hw_contexts = uint_field(it.value(), key);
    else if (key == "defense")
      cfg.defense = bool_field(it.value(), key);
    else if (key == "constant_time_flush")
      cfg.constant_time_flush = bool_field(it.value(), key);
    else if (key == "timestamp_bits")
      cfg.timestamp_bits = uint_field(it.value(), key);
    else if (key == "switch_cost_charged")
      cfg.switch_cost_charged = bool_field(it.value(), key);
    else if (key == "hit_threshold")
      cfg.hit_threshold = uint_field(it.value(), key);
    else
      throw ConfigError(key + ": unknown field");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json lower = json::array();
  for (const auto& g : cfg.lower_levels) lower.push_back(geometry_to_json(g));
  json j{{"l1i", geometry_to_json(cfg.l1i)},
         {"l1d", geometry_to_json(cfg.l1d)},
         {"lower_levels", lower},
         {"memory_latency", cfg.memory_latency},
         {"num_hw_contexts", cfg.num_hw_contexts},
         {"defense", cfg.defense},
         {"constant_time_flush", cfg.constant_time_flush},
         {"timestamp_bits", cfg.timestamp_bits},
         {"switch_cost_charged", cfg.switch_cost_charged}};
  if (cfg.hit_threshold) j["hit_threshold"] = *cfg.hit_threshold;
  return j.dump(2) + "\n";
}

}  // namespace tcsim
