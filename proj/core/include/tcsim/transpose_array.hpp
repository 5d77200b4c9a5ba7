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
#include <span>
#include <vector>

#include "tcsim/common.hpp"

namespace tcsim {

// Behavioral model of the transposed metadata SRAM that sits beside a cache.
//
// One column per cache line. A column stores the line's load timestamp
// (most significant bit in row 0) followed by one "seen" bit per hardware
// context. Normal cache operation reads and writes single columns; the
// scheduling machinery works on whole rows: saving or restoring one
// context's seen-bit row, and the timestamp-parallel compare below.
//
// compare_and_reset() evaluates `stamp > ts` for every column at once by
// walking the timestamp rows MSB-first. Each column has a pair of decision
// latches: `newer` latches when the column's stamp bit is 1 where the
// reference bit is 0 (column decided greater), `older` latches on the
// opposite pattern and takes the column out of play. The walk always runs
// for exactly timestamp_bits() iterations regardless of how early columns
// decide, so its duration is independent of the data — equal values latch
// neither side and count as not-newer. Columns that decide "newer" get the
// requested context's seen bit cleared.
class TransposeArray {
 public:
  TransposeArray(uint32_t columns, uint32_t timestamp_bits, uint32_t num_contexts);

  uint32_t columns() const { return columns_; }
  uint32_t timestamp_bits() const { return timestamp_bits_; }
  uint32_t num_contexts() const { return num_contexts_; }
  // 64-bit words per row
  uint32_t row_words() const { return row_words_; }

  // -- column port (used on the cache's hit/fill path) --
  void write_stamp(uint32_t column, uint64_t stamp);
  uint64_t read_stamp(uint32_t column) const;
  bool read_sbit(uint32_t column, CtxId ctx) const;
  void write_sbit(uint32_t column, CtxId ctx, bool value);
  // fill semantics: requesting context's bit set, every other context's cleared
  void set_sbits_one_hot(uint32_t column, CtxId ctx);
  // invalidation: stamp and all seen bits go to zero
  void clear_column(uint32_t column);

  // -- row port (used at context switches) --
  std::vector<uint64_t> save_row(CtxId ctx) const;
  // `bits` must have row_words() entries; bits past columns() are ignored
  void restore_row(CtxId ctx, std::span<const uint64_t> bits);
  // restore_row, then clear every column not selected by `keep`
  void restore_row_masked(CtxId ctx, std::span<const uint64_t> bits,
                          std::span<const uint64_t> keep);
  void clear_row(CtxId ctx);

  struct CompareResult {
    std::vector<uint64_t> newer;  // columns with stamp > ts (seen bit cleared)
    std::vector<uint64_t> older;  // columns decided stamp < ts
    uint32_t iterations = 0;      // always timestamp_bits(); recorded as a witness
  };
  // Clears ctx's seen bit for every column whose stamp is strictly greater
  // than `ts` (raw unsigned compare on the wrapped values).
  CompareResult compare_and_reset(uint64_t ts, CtxId ctx);

 private:
  const uint64_t* row(uint32_t r) const { return bits_.data() + size_t(r) * row_words_; }
  uint64_t* row(uint32_t r) { return bits_.data() + size_t(r) * row_words_; }
  uint32_t sbit_row(CtxId ctx) const;
  void check_column(uint32_t column) const;

  uint32_t columns_;
  uint32_t timestamp_bits_;
  uint32_t num_contexts_;
  uint32_t row_words_;
  uint64_t column_pad_mask_;     // valid-column bits of the last word
  std::vector<uint64_t> bits_;   // (timestamp_bits_ + num_contexts_) rows
};

// The reference value being compared against is consumed serially, one bit
// per iteration, most significant first — mirroring a shift register feeding
// the row compare.
class TsShiftRegister {
 public:
  TsShiftRegister(uint64_t value, uint32_t width) : value_(value), width_(width) {}
  bool shift_msb() {
    bool bit = (value_ >> (width_ - 1 - consumed_)) & 1u;
    ++consumed_;
    return bit;
  }
  bool fully_consumed() const { return consumed_ == width_; }
  uint32_t consumed() const { return consumed_; }

 private:
  uint64_t value_;
  uint32_t width_;
  uint32_t consumed_ = 0;
};

}  // namespace tcsim
