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

#include "tcsim/cache.hpp"

#include <cassert>

namespace tcsim {

void CacheGeometry::validate() const {
  auto fail = [this](const std::string& field, const std::string& why) {
    throw ConfigError("cache '" + (name.empty() ? std::string("?") : name) + "': " + field +
                      " " + why);
  };
  if (size_bytes == 0) fail("size", "must be positive");
  if (line_bytes == 0 || !is_pow2(line_bytes)) fail("line_size", "must be a power of two");
  if (ways == 0) fail("associativity", "must be positive");
  if (hit_latency == 0) fail("hit_latency", "must be positive");
  uint64_t set_bytes = uint64_t(line_bytes) * ways;
  if (size_bytes % set_bytes != 0)
    fail("size", "must be divisible by line_size * associativity");
  if (!is_pow2(size_bytes / set_bytes)) fail("size", "implies a non-power-of-two set count");
}

Cache::Cache(CacheGeometry geom, uint32_t num_contexts, uint32_t timestamp_bits)
    : geom_(std::move(geom)),
      lines_(geom_.num_lines()),
      meta_(geom_.num_lines(), timestamp_bits, num_contexts),
      valid_mask_(ceil_div(geom_.num_lines(), 64), 0) {
  geom_.validate();
}

std::optional<Cache::WayRef> Cache::lookup(Addr addr) const {
  uint64_t ln = addr / geom_.line_bytes;
  uint32_t set = set_index(ln);
  for (uint32_t w = 0; w < geom_.ways; ++w) {
    const Line& l = lines_[size_t(set) * geom_.ways + w];
    if (l.valid && l.line_number == ln) return WayRef{set, w};
  }
  return std::nullopt;
}

void Cache::touch(WayRef w) {
  assert(line(w).valid);
  line(w).last_used = ++lru_tick_;
}

void Cache::refresh_valid_mask(uint32_t column, bool valid) {
  uint64_t m = uint64_t(1) << (column % 64);
  if (valid)
    valid_mask_[column / 64] |= m;
  else
    valid_mask_[column / 64] &= ~m;
}

std::optional<Cache::Victim> Cache::fill(Addr addr, CtxId ctx, uint64_t stamp) {
  uint64_t ln = addr / geom_.line_bytes;
  uint32_t set = set_index(ln);
  assert(!lookup(addr) && "fill of a line that is already resident");

  // an invalid way first, otherwise the least recently used one
  uint32_t way = geom_.ways;
  uint32_t oldest_way = 0;
  uint64_t oldest_tick = 0;
  bool have_valid = false;
  for (uint32_t i = 0; i < geom_.ways; ++i) {
    Line& l = lines_[size_t(set) * geom_.ways + i];
    if (!l.valid) {
      way = i;
      break;
    }
    if (!have_valid || l.last_used < oldest_tick) {
      have_valid = true;
      oldest_way = i;
      oldest_tick = l.last_used;
    }
  }

  std::optional<Victim> victim;
  if (way == geom_.ways) {
    way = oldest_way;
    WayRef v{set, way};
    victim = Victim{line_addr(v), line(v).dirty};
    ++stats_.evictions;
    invalidate(v);
  }

  WayRef w{set, way};
  Line& l = line(w);
  l.line_number = ln;
  l.valid = true;
  l.dirty = false;
  l.last_used = ++lru_tick_;
  refresh_valid_mask(column(w), true);
  meta_.write_stamp(column(w), stamp);
  meta_.set_sbits_one_hot(column(w), ctx);
  ++stats_.fills;
  return victim;
}

void Cache::invalidate(WayRef w) {
  Line& l = line(w);
  assert(l.valid);
  l.valid = false;
  l.dirty = false;
  l.last_used = 0;
  refresh_valid_mask(column(w), false);
  meta_.clear_column(column(w));
}

void Cache::mark_dirty(WayRef w) {
  assert(line(w).valid);
  line(w).dirty = true;
}

void Cache::restore_sbits(CtxId ctx, std::span<const uint64_t> bits) {
  meta_.restore_row_masked(ctx, bits, valid_mask_);
}

uint32_t Cache::resident_lines() const {
  uint32_t n = 0;
  for (const Line& l : lines_)
    if (l.valid) ++n;
  return n;
}

}  // namespace tcsim
