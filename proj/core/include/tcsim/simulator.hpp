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

#include <string>
#include <vector>

#include "tcsim/config.hpp"
#include "tcsim/hierarchy.hpp"
#include "tcsim/trace.hpp"

namespace tcsim {

// One PROBE event's timing, as the issuing process would observe it.
struct ProbeSample {
  uint64_t seq = 0;
  Pid pid = 0;
  Addr addr = 0;
  Cycle latency = 0;

  bool operator==(const ProbeSample&) const = default;
};

struct SimulationResult {
  std::vector<std::string> cache_names;
  std::vector<CacheStats> cache_stats;
  Cycle cycles = 0;
  uint64_t instructions = 0;  // every non-SCHED trace event counts as one
  uint64_t context_switches = 0;
  Cycle switch_cycles = 0;
  std::vector<ProbeSample> probes;

  double mpki(size_t cache_id) const { return cache_stats.at(cache_id).mpki(instructions); }
};

// Replay `trace` against a fresh hierarchy built from `cfg`. PROBE behaves as
// a read whose latency is also logged. Throws SimError on scheduling
// violations the parser cannot see (a pid live on two contexts at once).
SimulationResult run_trace(const Trace& trace, const RunConfig& cfg,
                           SimObserver* observer = nullptr);

}  // namespace tcsim
