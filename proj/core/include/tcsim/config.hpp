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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcsim/cache.hpp"
#include "tcsim/common.hpp"

namespace tcsim {

// Full machine + policy description for one simulation run. Split L1
// (instruction / data) in front of one or more unified lower levels; the
// last lower level is the LLC. See docs/config.md for the JSON schema.
struct RunConfig {
  CacheGeometry l1i;
  CacheGeometry l1d;
  std::vector<CacheGeometry> lower_levels;

  uint32_t memory_latency = 200;
  uint32_t num_hw_contexts = 2;

  bool defense = false;              // per-context seen bits + stamp checks
  bool constant_time_flush = false;  // flush pays the full writeback path even on absent lines
  uint32_t timestamp_bits = 32;
  bool switch_cost_charged = true;   // add the row-copy cost to the clock on switches

  // probe classification threshold; when unset, midpoint of L1D hit and memory
  std::optional<uint32_t> hit_threshold;

  static RunConfig defaults();

  uint32_t effective_hit_threshold() const {
    return hit_threshold ? *hit_threshold : (l1d.hit_latency + memory_latency) / 2;
  }

  const CacheGeometry& llc() const { return lower_levels.back(); }

  // throws ConfigError naming the offending field
  void validate() const;

  bool same_machine(const RunConfig& other) const;
};

// "32K", "2M", "1G" or a plain byte count
uint64_t parse_size(const std::string& text);
std::string format_size(uint64_t bytes);

// JSON I/O. Unknown keys are rejected so typos cannot silently fall back to
// defaults. Both throw ConfigError with the offending field in the message.
RunConfig config_from_json(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

}  // namespace tcsim
