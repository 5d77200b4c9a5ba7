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

namespace tcsim::testing {

// Naive per-column model of the transposed metadata array: each column is
// an ordinary struct holding an integer stamp and a bool per context. The
// production class stores the same state sliced into bit rows and computes
// on whole rows at once; this model never does — every operation is a dumb
// per-column loop, so the two implementations share no mechanism.
class BitMatrixOracle {
 public:
  BitMatrixOracle(uint32_t columns, uint32_t timestamp_bits, uint32_t num_contexts)
      : tbits_(timestamp_bits),
        mask_(timestamp_bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << timestamp_bits) - 1),
        cols_(columns, Column{0, std::vector<bool>(num_contexts, false)}) {}

  struct Column {
    uint64_t stamp;
    std::vector<bool> sbits;
  };

  uint32_t columns() const { return uint32_t(cols_.size()); }
  uint32_t timestamp_bits() const { return tbits_; }

  void write_stamp(uint32_t c, uint64_t stamp) { cols_[c].stamp = stamp & mask_; }
  uint64_t read_stamp(uint32_t c) const { return cols_[c].stamp; }
  bool read_sbit(uint32_t c, CtxId ctx) const { return cols_[c].sbits[ctx]; }
  void write_sbit(uint32_t c, CtxId ctx, bool v) { cols_[c].sbits[ctx] = v; }

  void set_sbits_one_hot(uint32_t c, CtxId ctx) {
    for (size_t i = 0; i < cols_[c].sbits.size(); ++i) cols_[c].sbits[i] = (i == ctx);
  }

  void clear_column(uint32_t c) {
    cols_[c].stamp = 0;
    cols_[c].sbits.assign(cols_[c].sbits.size(), false);
  }

  std::vector<bool> save_row(CtxId ctx) const {
    std::vector<bool> out(cols_.size());
    for (size_t c = 0; c < cols_.size(); ++c) out[c] = cols_[c].sbits[ctx];
    return out;
  }

  void restore_row(CtxId ctx, const std::vector<bool>& bits) {
    for (size_t c = 0; c < cols_.size(); ++c) cols_[c].sbits[ctx] = bits[c];
  }

  void restore_row_masked(CtxId ctx, const std::vector<bool>& bits,
                          const std::vector<bool>& keep) {
    for (size_t c = 0; c < cols_.size(); ++c) cols_[c].sbits[ctx] = bits[c] && keep[c];
  }

  void clear_row(CtxId ctx) {
    for (auto& col : cols_) col.sbits[ctx] = false;
  }

  struct CompareResult {
    std::vector<bool> newer;  // stamp > ts
    std::vector<bool> older;  // stamp < ts
  };

  // Plain unsigned comparison per column; "newer" columns lose ctx's bit.
  CompareResult compare_and_reset(uint64_t ts, CtxId ctx) {
    ts &= mask_;
    CompareResult r{std::vector<bool>(cols_.size()), std::vector<bool>(cols_.size())};
    for (size_t c = 0; c < cols_.size(); ++c) {
      r.newer[c] = cols_[c].stamp > ts;
      r.older[c] = cols_[c].stamp < ts;
      if (r.newer[c]) cols_[c].sbits[ctx] = false;
    }
    return r;
  }

 private:
  uint32_t tbits_;
  uint64_t mask_;
  std::vector<Column> cols_;
};

// Unpack one packed row (64 columns per word, LSB-first) into bools.
inline std::vector<bool> unpack_row(const std::vector<uint64_t>& words, uint32_t columns) {
  std::vector<bool> out(columns);
  for (uint32_t c = 0; c < columns; ++c) out[c] = (words[c / 64] >> (c % 64)) & 1u;
  return out;
}

}  // namespace tcsim::testing
