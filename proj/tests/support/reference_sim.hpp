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

#include <vector>

#include "lru_oracle.hpp"
#include "tcsim/config.hpp"
#include "tcsim/hierarchy.hpp"
#include "tcsim/simulator.hpp"
#include "tcsim/trace.hpp"

namespace tcsim::testing {

// Plain multi-level LRU replay with no seen bits, no stamps, and no
// scheduling state beyond a ctx->pid map: the machine with the defense
// stripped out, rebuilt on the list-based LruOracle. A defense-off run of
// the production simulator must match this model access for access.
struct ReferenceRun {
  std::vector<AccessOutcome> outcomes;  // one per R/W/I/PROBE event, in order
  SimulationResult result;
};

inline ReferenceRun run_reference(const Trace& trace, const RunConfig& cfg) {
  struct Level {
    LruOracle model;
    CacheStats stats;
    uint32_t hit_latency;
  };

  std::vector<Level> levels;
  auto add = [&](const CacheGeometry& g) {
    levels.push_back(Level{LruOracle(g.num_sets(), g.ways, g.line_bytes), CacheStats{},
                           g.hit_latency});
  };
  add(cfg.l1i);
  add(cfg.l1d);
  for (const auto& g : cfg.lower_levels) add(g);

  std::vector<int> instr_path{0};
  std::vector<int> data_path{1};
  for (size_t i = 2; i < levels.size(); ++i) {
    instr_path.push_back(int(i));
    data_path.push_back(int(i));
  }

  Cycle const_flush = cfg.memory_latency;
  for (const Level& l : levels) const_flush += l.hit_latency;

  ReferenceRun run;
  Cycle cycles = 0;
  const Addr line_mask = ~Addr(cfg.l1d.line_bytes - 1);

  auto do_access = [&](const AccessEvent& ev) {
    const std::vector<int>& path = (ev.op == Op::IFetch) ? instr_path : data_path;
    const Addr laddr = ev.addr & line_mask;

    AccessOutcome out;
    out.num_caches = uint8_t(levels.size());

    int first_present = -1;
    for (size_t i = 0; i < path.size(); ++i)
      if (levels[path[i]].model.present(laddr)) {
        first_present = int(i);
        break;
      }

    for (size_t i = 0; i < path.size(); ++i) {
      if (first_present >= 0 && int(i) == first_present) {
        out.levels[path[i]] = LevelClass::Hit;
        ++levels[path[i]].stats.hits;
        break;
      }
      out.levels[path[i]] = LevelClass::Miss;
      ++levels[path[i]].stats.misses;
    }
    out.serviced_by = first_present >= 0 ? int8_t(path[first_present]) : int8_t(kMemory);
    out.latency =
        first_present >= 0 ? levels[path[first_present]].hit_latency : cfg.memory_latency;

    Cycle penalty = 0;
    if (first_present >= 0) levels[path[first_present]].model.touch(laddr);
    int fills = first_present >= 0 ? first_present : int(path.size());
    for (int i = fills - 1; i >= 0; --i) {
      Level& lv = levels[path[i]];
      auto fr = lv.model.fill(laddr);
      ++lv.stats.fills;
      if (fr.victim) {
        ++lv.stats.evictions;
        if (fr.victim->dirty) {
          ++lv.stats.writebacks;
          penalty += cfg.memory_latency;
        }
      }
    }
    if (ev.op == Op::Write) levels[path[0]].model.mark_dirty(laddr);

    cycles += out.latency + penalty;
    run.outcomes.push_back(out);
    if (ev.op == Op::Probe)
      run.result.probes.push_back(ProbeSample{ev.seq, ev.pid, ev.addr, out.latency});
  };

  auto do_flush = [&](const AccessEvent& ev) {
    const Addr laddr = ev.addr & line_mask;
    Cycle found_latency = 0;
    bool any_dirty = false;
    for (Level& lv : levels) {
      if (!lv.model.present(laddr)) continue;
      found_latency += lv.hit_latency;
      if (lv.model.dirty(laddr)) {
        any_dirty = true;
        ++lv.stats.writebacks;
      }
      ++lv.stats.flush_invalidations;
      lv.model.invalidate(laddr);
    }
    Cycle latency = cfg.constant_time_flush
                        ? const_flush
                        : found_latency + (any_dirty ? cfg.memory_latency : 0);
    cycles += latency;
  };

  for (const AccessEvent& ev : trace.events) {
    switch (ev.op) {
      case Op::Sched:
        ++run.result.context_switches;
        break;
      case Op::Flush:
        do_flush(ev);
        ++run.result.instructions;
        break;
      default:
        do_access(ev);
        ++run.result.instructions;
        break;
    }
  }

  for (size_t i = 0; i < levels.size(); ++i) {
    run.result.cache_names.push_back(i == 0   ? cfg.l1i.name
                                     : i == 1 ? cfg.l1d.name
                                              : cfg.lower_levels[i - 2].name);
    run.result.cache_stats.push_back(levels[i].stats);
  }
  run.result.cycles = cycles;
  run.result.switch_cycles = 0;
  return run;
}

}  // namespace tcsim::testing
