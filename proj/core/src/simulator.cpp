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

#include "tcsim/simulator.hpp"

namespace tcsim {

SimulationResult run_trace(const Trace& trace, const RunConfig& cfg, SimObserver* observer) {
  CacheHierarchy hw(cfg);
  hw.set_observer(observer);

  SimulationResult res;
  for (const AccessEvent& ev : trace.events) {
    switch (ev.op) {
      case Op::Sched:
        hw.context_switch(ev.pid, ev.ctx);
        break;
      case Op::Read:
        hw.access(ev.pid, ev.ctx, ev.addr, AccessKind::Read);
        ++res.instructions;
        break;
      case Op::Write:
        hw.access(ev.pid, ev.ctx, ev.addr, AccessKind::Write);
        ++res.instructions;
        break;
      case Op::IFetch:
        hw.access(ev.pid, ev.ctx, ev.addr, AccessKind::IFetch);
        ++res.instructions;
        break;
      case Op::Flush:
        hw.flush(ev.pid, ev.ctx, ev.addr);
        ++res.instructions;
        break;
      case Op::Probe: {
        AccessOutcome out = hw.access(ev.pid, ev.ctx, ev.addr, AccessKind::Read);
        res.probes.push_back(ProbeSample{ev.seq, ev.pid, ev.addr, out.latency});
        ++res.instructions;
        break;
      }
    }
  }

  for (size_t i = 0; i < hw.num_caches(); ++i) {
    res.cache_names.push_back(hw.cache(i).geometry().name);
    res.cache_stats.push_back(hw.cache(i).stats());
  }
  res.cycles = hw.clock().now();
  res.context_switches = hw.context_switches();
  res.switch_cycles = hw.switch_cycles_charged();
  return res;
}

}  // namespace tcsim
