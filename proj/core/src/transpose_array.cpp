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

#include "tcsim/transpose_array.hpp"

#include <cassert>
#include <stdexcept>

namespace tcsim {

TransposeArray::TransposeArray(uint32_t columns, uint32_t timestamp_bits,
                               uint32_t num_contexts)
    : columns_(columns), timestamp_bits_(timestamp_bits), num_contexts_(num_contexts) {
  if (columns == 0) throw ConfigError("transpose array: columns must be positive");
  if (timestamp_bits == 0 || timestamp_bits > 64)
    throw ConfigError("transpose array: timestamp_bits must be in [1,64]");
  if (num_contexts == 0) throw ConfigError("transpose array: num_contexts must be positive");
  row_words_ = uint32_t(ceil_div(columns, 64));
  uint32_t tail = columns % 64;
  column_pad_mask_ = tail ? ((uint64_t(1) << tail) - 1) : ~uint64_t(0);
  bits_.assign(size_t(timestamp_bits_ + num_contexts_) * row_words_, 0);
}

void TransposeArray::check_column(uint32_t column) const {
  if (column >= columns_)
    throw std::out_of_range("transpose array: column " + std::to_string(column) +
                            " out of range (have " + std::to_string(columns_) + ")");
}

uint32_t TransposeArray::sbit_row(CtxId ctx) const {
  if (ctx >= num_contexts_)
    throw std::out_of_range("transpose array: context " + std::to_string(ctx) +
                            " out of range (have " + std::to_string(num_contexts_) + ")");
  return timestamp_bits_ + ctx;
}

void TransposeArray::write_stamp(uint32_t column, uint64_t stamp) {
  check_column(column);
  uint32_t w = column / 64;
  uint64_t m = uint64_t(1) << (column % 64);
  for (uint32_t i = 0; i < timestamp_bits_; ++i) {
    // row 0 holds the MSB
    bool bit = (stamp >> (timestamp_bits_ - 1 - i)) & 1u;
    if (bit)
      row(i)[w] |= m;
    else
      row(i)[w] &= ~m;
  }
}

uint64_t TransposeArray::read_stamp(uint32_t column) const {
  check_column(column);
  uint32_t w = column / 64;
  uint64_t m = uint64_t(1) << (column % 64);
  uint64_t v = 0;
  for (uint32_t i = 0; i < timestamp_bits_; ++i) v = (v << 1) | ((row(i)[w] & m) ? 1u : 0u);
  return v;
}

bool TransposeArray::read_sbit(uint32_t column, CtxId ctx) const {
  check_column(column);
  return (row(sbit_row(ctx))[column / 64] >> (column % 64)) & 1u;
}

void TransposeArray::write_sbit(uint32_t column, CtxId ctx, bool value) {
  check_column(column);
  uint64_t m = uint64_t(1) << (column % 64);
  if (value)
    row(sbit_row(ctx))[column / 64] |= m;
  else
    row(sbit_row(ctx))[column / 64] &= ~m;
}

void TransposeArray::set_sbits_one_hot(uint32_t column, CtxId ctx) {
  check_column(column);
  (void)sbit_row(ctx);  // range-check ctx before touching any row
  uint64_t m = uint64_t(1) << (column % 64);
  for (uint32_t c = 0; c < num_contexts_; ++c) {
    if (c == ctx)
      row(timestamp_bits_ + c)[column / 64] |= m;
    else
      row(timestamp_bits_ + c)[column / 64] &= ~m;
  }
}

void TransposeArray::clear_column(uint32_t column) {
  check_column(column);
  uint32_t w = column / 64;
  uint64_t m = uint64_t(1) << (column % 64);
  for (uint32_t r = 0; r < timestamp_bits_ + num_contexts_; ++r) row(r)[w] &= ~m;
}

std::vector<uint64_t> TransposeArray::save_row(CtxId ctx) const {
  const uint64_t* r = row(sbit_row(ctx));
  return std::vector<uint64_t>(r, r + row_words_);
}

void TransposeArray::restore_row(CtxId ctx, std::span<const uint64_t> bits) {
  if (bits.size() != row_words_)
    throw std::invalid_argument("transpose array: restore_row size mismatch");
  uint64_t* r = row(sbit_row(ctx));
  for (uint32_t w = 0; w < row_words_; ++w) r[w] = bits[w];
  r[row_words_ - 1] &= column_pad_mask_;
}

void TransposeArray::restore_row_masked(CtxId ctx, std::span<const uint64_t> bits,
                                        std::span<const uint64_t> keep) {
  if (bits.size() != row_words_ || keep.size() != row_words_)
    throw std::invalid_argument("transpose array: restore_row_masked size mismatch");
  uint64_t* r = row(sbit_row(ctx));
  for (uint32_t w = 0; w < row_words_; ++w) r[w] = bits[w] & keep[w];
  r[row_words_ - 1] &= column_pad_mask_;
}

void TransposeArray::clear_row(CtxId ctx) {
  uint64_t* r = row(sbit_row(ctx));
  for (uint32_t w = 0; w < row_words_; ++w) r[w] = 0;
}

TransposeArray::CompareResult TransposeArray::compare_and_reset(uint64_t ts, CtxId ctx) {
  uint32_t sb = sbit_row(ctx);

  CompareResult res;
  // both latch planes start cleared
  res.newer.assign(row_words_, 0);
  res.older.assign(row_words_, 0);

  TsShiftRegister ref(ts, timestamp_bits_);
  for (uint32_t i = 0; i < timestamp_bits_; ++i) {
    // No early exit: every comparison takes the same number of row reads,
    // already-decided columns are simply masked out of the update.
    bool ts_bit = ref.shift_msb();
    const uint64_t* tc = row(i);
    for (uint32_t w = 0; w < row_words_; ++w) {
      uint64_t undecided = ~(res.newer[w] | res.older[w]);
      if (ts_bit)
        res.older[w] |= undecided & ~tc[w];
      else
        res.newer[w] |= undecided & tc[w];
    }
    ++res.iterations;
  }
  assert(ref.fully_consumed());

  res.newer[row_words_ - 1] &= column_pad_mask_;
  res.older[row_words_ - 1] &= column_pad_mask_;

  uint64_t* sbits = row(sb);
  for (uint32_t w = 0; w < row_words_; ++w) sbits[w] &= ~res.newer[w];
  return res;
}

}  // namespace tcsim
