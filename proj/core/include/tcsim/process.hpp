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

#include <cstdint>
#include <vector>

#include "tcsim/common.hpp"

namespace tcsim {

// Per-process state the scheduler carries across preemptions: the wrapped
// time the process last left a core, and its seen-bit row for every cache
// level (index matches the hierarchy's cache ids). A process that has never
// run has preempt_stamp 0 and empty rows, which restore as all-zeros.
struct ProcessRecord {
  Pid pid = 0;
  uint64_t preempt_stamp = 0;
  bool ever_scheduled = false;
  std::vector<std::vector<uint64_t>> saved_sbits;
};

// Cost model for moving seen-bit rows in and out at a context switch.
//
// A row holds one bit per cache line and moves through memory in 64-byte
// transactions, i.e. 512 lines per transaction. Every switch pays for two
// row copies per cache (save outgoing + restore incoming) at memory latency
// each, and one stamp comparison, which takes one cycle per timestamp bit
// and runs across all levels in parallel.
struct SwitchCostModel {
  uint32_t memory_latency;
  uint32_t timestamp_bits;

  static uint32_t sbit_copy_accesses(uint32_t num_lines) {
    return uint32_t(ceil_div(num_lines, 512));
  }

  Cycle switch_cost(const std::vector<uint32_t>& lines_per_cache) const {
    Cycle c = 0;
    for (uint32_t n : lines_per_cache)
      c += Cycle(2) * sbit_copy_accesses(n) * memory_latency;
    return c + timestamp_bits;
  }
};

}  // namespace tcsim
