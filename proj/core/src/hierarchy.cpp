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

#include "tcsim/hierarchy.hpp"

#include <cassert>

namespace tcsim {

CacheHierarchy::CacheHierarchy(const RunConfig& cfg) : config_(cfg), clock_(cfg.timestamp_bits) {
  config_.validate();
  if (config_.lower_levels.size() + 2 > kMaxCaches)
    throw ConfigError("lower_levels: at most " + std::to_string(kMaxCaches - 2) +
                      " levels supported");

  caches_.reserve(config_.lower_levels.size() + 2);
  caches_.emplace_back(config_.l1i, config_.num_hw_contexts, config_.timestamp_bits);
  caches_.emplace_back(config_.l1d, config_.num_hw_contexts, config_.timestamp_bits);
  for (const auto& g : config_.lower_levels)
    caches_.emplace_back(g, config_.num_hw_contexts, config_.timestamp_bits);

  instr_path_.push_back(kL1I);
  data_path_.push_back(kL1D);
  for (size_t i = 2; i < caches_.size(); ++i) {
    instr_path_.push_back(int(i));
    data_path_.push_back(int(i));
  }

  for (const Cache& c : caches_) {
    lines_per_cache_.push_back(c.geometry().num_lines());
    const_flush_latency_ += c.geometry().hit_latency;
  }
  const_flush_latency_ += config_.memory_latency;

  ctx_map_.assign(config_.num_hw_contexts, std::nullopt);
}

void CacheHierarchy::check_scheduled(Pid pid, CtxId ctx) const {
  if (ctx >= ctx_map_.size())
    throw SimError("access on unknown hardware context " + std::to_string(ctx));
  if (!ctx_map_[ctx] || *ctx_map_[ctx] != pid)
    throw SimError("access by pid " + std::to_string(pid) + " on context " +
                   std::to_string(ctx) + " which is not scheduled to it");
}

ProcessRecord& CacheHierarchy::get_or_create(Pid pid) {
  auto [it, inserted] = processes_.try_emplace(pid);
  if (inserted) it->second.pid = pid;
  return it->second;
}

std::optional<Pid> CacheHierarchy::scheduled_on(CtxId ctx) const {
  return ctx < ctx_map_.size() ? ctx_map_[ctx] : std::nullopt;
}

const ProcessRecord* CacheHierarchy::process(Pid pid) const {
  auto it = processes_.find(pid);
  return it == processes_.end() ? nullptr : &it->second;
}

Cycle CacheHierarchy::switch_cost() const {
  SwitchCostModel model{config_.memory_latency, config_.timestamp_bits};
  return model.switch_cost(lines_per_cache_);
}

AccessOutcome CacheHierarchy::access(Pid pid, CtxId ctx, Addr addr, AccessKind kind) {
  check_scheduled(pid, ctx);
  const std::vector<int>& path = (kind == AccessKind::IFetch) ? instr_path_ : data_path_;
  const Addr laddr = caches_[path[0]].line_base(addr);

  AccessOutcome out;
  out.num_caches = uint8_t(caches_.size());

  std::array<std::optional<Cache::WayRef>, kMaxCaches> hold;
  int first_present = -1;  // position in `path` of the level that owns the data
  for (size_t i = 0; i < path.size(); ++i) {
    hold[i] = caches_[path[i]].lookup(laddr);
    if (hold[i] && first_present < 0) first_present = int(i);
  }

  // Which level gets to serve. The walk decides classification and latency
  // only — it performs no fill and no LRU movement.
  int serving = -1;  // position in `path`; -1 = memory
  for (size_t i = 0; i < path.size(); ++i) {
    int id = path[i];
    if (hold[i]) {
      if (!config_.defense || caches_[id].sbit(*hold[i], ctx)) {
        out.levels[id] = LevelClass::Hit;
        ++caches_[id].stats().hits;
        serving = int(i);
        break;
      }
      // the copy stays, the stamp stays; only the seen bit changes
      out.levels[id] = LevelClass::FirstAccessMiss;
      ++caches_[id].stats().first_access_misses;
      caches_[id].set_sbit(*hold[i], ctx);
    } else if (first_present < 0 || int(i) < first_present) {
      out.levels[id] = LevelClass::Miss;
      ++caches_[id].stats().misses;
    }
    // else: probed past the data-holding level while chasing a first
    // access — leave it Absent, untouched
  }
  out.serviced_by = serving >= 0 ? int8_t(path[serving]) : int8_t(kMemory);
  out.latency =
      serving >= 0 ? caches_[path[serving]].geometry().hit_latency : config_.memory_latency;

  if (observer_) observer_->on_access(pid, ctx, addr, kind, out);

  // Data movement, identical with the defense on or off: the first level
  // holding the line hands the data up and refreshes its recency; every
  // level above it takes a demand fill.
  //
  // Fills are stamped with the load's completion time, not its issue time:
  // the metadata is written when the data arrives. A process's own fills
  // always complete before its preemption stamp is taken, while a fill on
  // behalf of another process lands strictly after it, so the strictly-
  // greater stamp compare stays decisive even across a zero-cost switch.
  const uint64_t stamp = clock_.wrap(clock_.now() + out.latency);
  Cycle writeback_penalty = 0;
  if (first_present >= 0) caches_[path[first_present]].touch(*hold[first_present]);
  int fills = first_present >= 0 ? first_present : int(path.size());
  for (int i = fills - 1; i >= 0; --i) {
    int id = path[i];
    auto victim = caches_[id].fill(laddr, ctx, stamp);
    if (victim) {
      if (victim->dirty) {
        ++caches_[id].stats().writebacks;
        writeback_penalty += config_.memory_latency;
      }
      if (observer_) observer_->on_evict(id, victim->line_addr);
    }
    if (observer_) observer_->on_fill(id, laddr, stamp);
  }

  if (kind == AccessKind::Write) {
    auto top = caches_[path[0]].lookup(laddr);
    assert(top);
    caches_[path[0]].mark_dirty(*top);
  }

  clock_.advance(out.latency + writeback_penalty);
  return out;
}

Cycle CacheHierarchy::flush(Pid pid, CtxId ctx, Addr addr) {
  check_scheduled(pid, ctx);
  const Addr laddr = caches_[0].line_base(addr);

  Cycle found_latency = 0;
  bool any_dirty = false;
  for (size_t id = 0; id < caches_.size(); ++id) {
    auto w = caches_[id].lookup(laddr);
    if (!w) continue;
    found_latency += caches_[id].geometry().hit_latency;
    if (caches_[id].dirty(*w)) {
      any_dirty = true;
      ++caches_[id].stats().writebacks;
    }
    ++caches_[id].stats().flush_invalidations;
    caches_[id].invalidate(*w);
    if (observer_) observer_->on_evict(int(id), laddr);
  }

  // An early-out flush reveals through its duration how much of the
  // hierarchy held the line; the constant-time variant always charges the
  // full walk plus a (possibly dummy) writeback.
  Cycle latency;
  if (config_.constant_time_flush)
    latency = const_flush_latency_;
  else
    latency = found_latency + (any_dirty ? config_.memory_latency : 0);

  clock_.advance(latency);
  return latency;
}

Cycle CacheHierarchy::context_switch(Pid in_pid, CtxId ctx) {
  if (ctx >= ctx_map_.size())
    throw SimError("schedule on unknown hardware context " + std::to_string(ctx));
  for (CtxId c = 0; c < ctx_map_.size(); ++c)
    if (c != ctx && ctx_map_[c] && *ctx_map_[c] == in_pid)
      throw SimError("pid " + std::to_string(in_pid) + " is already scheduled on context " +
                     std::to_string(c));

  const std::optional<Pid> out_pid = ctx_map_[ctx];
  const uint64_t now_w = clock_.wrapped();

  if (config_.defense) {
    if (out_pid) {
      ProcessRecord& rec = get_or_create(*out_pid);
      rec.saved_sbits.resize(caches_.size());
      for (size_t i = 0; i < caches_.size(); ++i) rec.saved_sbits[i] = caches_[i].save_sbits(ctx);
      rec.preempt_stamp = now_w;
    }

    ProcessRecord& in_rec = get_or_create(in_pid);
    // Wrapped "now" reading earlier than the preemption stamp means the
    // clock wrapped while the process was off-core; no stored stamp can
    // prove a line predates the preemption, so distrust all of them.
    const bool wrapped_while_away = in_rec.ever_scheduled && now_w < in_rec.preempt_stamp;
    for (size_t i = 0; i < caches_.size(); ++i) {
      if (in_rec.saved_sbits.size() == caches_.size())
        caches_[i].restore_sbits(ctx, in_rec.saved_sbits[i]);
      else
        caches_[i].clear_sbits(ctx);  // never ran before: nothing seen
      if (wrapped_while_away)
        caches_[i].clear_sbits(ctx);
      else if (in_rec.ever_scheduled)
        caches_[i].compare_and_reset(in_rec.preempt_stamp, ctx);
    }
    in_rec.ever_scheduled = true;
  }

  ctx_map_[ctx] = in_pid;
  ++switches_;

  Cycle cost = 0;
  if (config_.defense) {
    cost = switch_cost();
    if (config_.switch_cost_charged) {
      clock_.advance(cost);
      switch_cycles_ += cost;
    }
  }

  if (observer_) observer_->on_context_switch(ctx, out_pid, in_pid, now_w);
  return cost;
}

}  // namespace tcsim
