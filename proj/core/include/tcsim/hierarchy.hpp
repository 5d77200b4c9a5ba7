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

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "tcsim/cache.hpp"
#include "tcsim/clock.hpp"
#include "tcsim/common.hpp"
#include "tcsim/config.hpp"
#include "tcsim/process.hpp"

namespace tcsim {

enum class AccessKind : uint8_t { Read, Write, IFetch };

// What one demand access did at one cache level.
//   Hit            — line present and already seen by the requesting context
//                    (with the defense off: simply present)
//   Miss           — line absent; the level is filled on the way back up
//   FirstAccessMiss— line present but this context has not paid a miss for it
//                    since it was loaded; the request continues downward and
//                    the level keeps its copy without refilling
//   Absent         — level not involved (not on this access's path, past the
//                    point that served it, or probed below the data-holding
//                    level while chasing a first access)
enum class LevelClass : uint8_t { Absent = 0, Hit, Miss, FirstAccessMiss };

inline constexpr int kMemory = -1;
inline constexpr size_t kMaxCaches = 8;

struct AccessOutcome {
  std::array<LevelClass, kMaxCaches> levels{};
  uint8_t num_caches = 0;
  int8_t serviced_by = kMemory;  // cache id, or kMemory
  Cycle latency = 0;

  bool operator==(const AccessOutcome&) const = default;
};

// Event tap for oracles and loggers. Per access the order is: on_access
// (pre-update classification), then per filled level deepest-first,
// on_evict for its victim (if any) followed by on_fill. Flushes emit
// on_evict per level that held the line.
class SimObserver {
 public:
  virtual ~SimObserver() = default;
  virtual void on_access(Pid, CtxId, Addr, AccessKind, const AccessOutcome&) {}
  virtual void on_fill(int cache_id, Addr line_addr, uint64_t stamp) {}
  virtual void on_evict(int cache_id, Addr line_addr) {}
  virtual void on_context_switch(CtxId, std::optional<Pid> out, Pid in, uint64_t wrapped_now) {}
};

// The modeled machine: split L1 over shared unified levels over memory,
// non-inclusive, no back-invalidation, every cache shared by all hardware
// contexts.
//
// Data movement (lookups, LRU updates, fills, evictions, dirty bits) is
// computed the same way whether the defense is on or off; the defense only
// decides which level is allowed to *serve* the request and maintains the
// per-context seen bits:
//
//   - A level holding the line with the requester's seen bit set serves at
//     its own hit latency.
//   - A level holding the line with the bit clear sets the bit, refuses to
//     serve, and lets the request continue toward memory; its copy is not
//     refilled and its load stamp keeps the original load time. Levels
//     below the one that owns the data are only probed — they neither fill
//     nor reorder their replacement state.
//   - Levels above the first one holding the line missed outright; they
//     fill on the way back (the requester's own legitimate miss path),
//     which stamps the new line and makes the requester its only seer.
//
// An access therefore costs the hit latency of the first level that may
// serve it, or memory latency. Dirty victims write back to memory; the
// writeback is charged to the clock but never to the access's own latency.
//
// Context switches save the outgoing context's seen-bit rows into the
// outgoing process, restore the incoming process's rows, and then clear
// the bit of every line loaded after the incoming process was last
// preempted — comparing wrapped stamps, with a full-row reset whenever the
// wrapped clock reads earlier than the process's preemption stamp (the
// clock must have wrapped, so no stored stamp can be trusted).
class CacheHierarchy {
 public:
  explicit CacheHierarchy(const RunConfig& cfg);

  AccessOutcome access(Pid pid, CtxId ctx, Addr addr, AccessKind kind);
  // invalidate the line everywhere; returns the charged latency
  Cycle flush(Pid pid, CtxId ctx, Addr addr);
  // schedule `in_pid` onto `ctx`; returns the bookkeeping cost (charged to
  // the clock only when the config says so)
  Cycle context_switch(Pid in_pid, CtxId ctx);

  static constexpr int kL1I = 0;
  static constexpr int kL1D = 1;

  size_t num_caches() const { return caches_.size(); }
  Cache& cache(size_t id) { return caches_[id]; }
  const Cache& cache(size_t id) const { return caches_[id]; }
  const std::vector<int>& data_path() const { return data_path_; }
  const std::vector<int>& instr_path() const { return instr_path_; }

  GlobalClock& clock() { return clock_; }
  const GlobalClock& clock() const { return clock_; }
  const RunConfig& config() const { return config_; }

  std::optional<Pid> scheduled_on(CtxId ctx) const;
  const ProcessRecord* process(Pid pid) const;

  // per-switch bookkeeping cost under the current config
  Cycle switch_cost() const;
  uint64_t context_switches() const { return switches_; }
  Cycle switch_cycles_charged() const { return switch_cycles_; }

  void set_observer(SimObserver* obs) { observer_ = obs; }

 private:
  void check_scheduled(Pid pid, CtxId ctx) const;
  ProcessRecord& get_or_create(Pid pid);

  RunConfig config_;
  std::vector<Cache> caches_;  // [0]=L1I, [1]=L1D, [2..]=lower levels
  std::vector<int> data_path_;
  std::vector<int> instr_path_;
  std::vector<uint32_t> lines_per_cache_;
  GlobalClock clock_;
  std::vector<std::optional<Pid>> ctx_map_;
  std::map<Pid, ProcessRecord> processes_;
  uint64_t switches_ = 0;
  Cycle switch_cycles_ = 0;
  Cycle const_flush_latency_ = 0;
  SimObserver* observer_ = nullptr;
};

}  // namespace tcsim
