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
#include <span>
#include <string>
#include <vector>

#include "tcsim/common.hpp"
#include "tcsim/transpose_array.hpp"

namespace tcsim {

struct CacheGeometry {
  std::string name;          // report label: "L1I", "L1D", "LLC", ...
  uint64_t size_bytes = 0;
  uint32_t line_bytes = 64;
  uint32_t ways = 8;
  uint32_t hit_latency = 1;  // cycles

  uint32_t num_sets() const { return uint32_t(size_bytes / (uint64_t(line_bytes) * ways)); }
  uint32_t num_lines() const { return uint32_t(size_bytes / line_bytes); }
  // throws ConfigError naming the offending field
  void validate() const;
};

struct CacheStats {
  uint64_t hits = 0;
  uint64_t misses = 0;               // line absent, demand fill follows
  uint64_t first_access_misses = 0;  // line present but unseen by the requester
  uint64_t fills = 0;
  uint64_t evictions = 0;            // capacity victims
  uint64_t flush_invalidations = 0;
  uint64_t writebacks = 0;

  uint64_t accesses() const { return hits + misses + first_access_misses; }
  double mpki(uint64_t instructions) const {
    return instructions ? double(misses + first_access_misses) * 1000.0 / double(instructions)
                        : 0.0;
  }
};

// One level of set-associative cache. Strict LRU per set, write-back /
// write-allocate. Tags are full line numbers, so an entry's address can be
// reconstructed on eviction. Per-line load stamps and per-context seen bits
// live in the attached TransposeArray (column = set * ways + way); this class
// keeps them in sync with fills and invalidations but attaches no policy to
// them — that belongs to the hierarchy.
class Cache {
 public:
  Cache(CacheGeometry geom, uint32_t num_contexts, uint32_t timestamp_bits);

  struct WayRef {
    uint32_t set;
    uint32_t way;
  };
  struct Victim {
    Addr line_addr;
    bool dirty;
  };

  // address is masked down to its line internally
  std::optional<WayRef> lookup(Addr addr) const;

  // Install `addr`, evicting the LRU way if the set is full. The new line is
  // MRU, clean, stamped with `stamp`, and seen only by `ctx`.
  std::optional<Victim> fill(Addr addr, CtxId ctx, uint64_t stamp);

  void touch(WayRef w);  // make MRU
  void invalidate(WayRef w);
  void mark_dirty(WayRef w);

  bool valid(WayRef w) const { return line(w).valid; }
  bool dirty(WayRef w) const { return line(w).dirty; }
  Addr line_addr(WayRef w) const { return line(w).line_number * geom_.line_bytes; }
  uint32_t column(WayRef w) const { return w.set * geom_.ways + w.way; }

  bool sbit(WayRef w, CtxId ctx) const { return meta_.read_sbit(column(w), ctx); }
  void set_sbit(WayRef w, CtxId ctx) { meta_.write_sbit(column(w), ctx, true); }
  uint64_t load_stamp(WayRef w) const { return meta_.read_stamp(column(w)); }

  // context-switch support: one whole seen-bit row per context
  std::vector<uint64_t> save_sbits(CtxId ctx) const { return meta_.save_row(ctx); }
  // restore is masked against the valid lines so an invalid line can never
  // carry a stale seen bit
  void restore_sbits(CtxId ctx, std::span<const uint64_t> bits);
  void clear_sbits(CtxId ctx) { meta_.clear_row(ctx); }
  TransposeArray::CompareResult compare_and_reset(uint64_t ts, CtxId ctx) {
    return meta_.compare_and_reset(ts, ctx);
  }

  const CacheGeometry& geometry() const { return geom_; }
  const TransposeArray& meta() const { return meta_; }
  CacheStats& stats() { return stats_; }
  const CacheStats& stats() const { return stats_; }

  uint32_t resident_lines() const;
  Addr line_base(Addr addr) const { return addr & ~Addr(geom_.line_bytes - 1); }

 private:
  struct Line {
    uint64_t line_number = 0;  // addr / line_bytes
    uint64_t last_used = 0;    // recency tick; larger = more recent
    bool valid = false;
    bool dirty = false;
  };

  const Line& line(WayRef w) const { return lines_[size_t(w.set) * geom_.ways + w.way]; }
  Line& line(WayRef w) { return lines_[size_t(w.set) * geom_.ways + w.way]; }
  uint32_t set_index(uint64_t line_number) const { return uint32_t(line_number & (geom_.num_sets() - 1)); }
  void refresh_valid_mask(uint32_t column, bool valid);

  CacheGeometry geom_;
  std::vector<Line> lines_;
  TransposeArray meta_;
  std::vector<uint64_t> valid_mask_;  // one bit per column, for masked restores
  uint64_t lru_tick_ = 0;
  CacheStats stats_;
};

}  // namespace tcsim
