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

#include "tcsim/common.hpp"

namespace tcsim {

// Monotone simulation clock. The full 64-bit count never wraps; the stamps
// stored next to cache lines are the low `bits` of it, so wrapped() is what
// every stored timestamp and every stamp comparison sees.
class GlobalClock {
 public:
  explicit GlobalClock(uint32_t bits) : mask_(bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1) {}

  Cycle now() const { return now_; }
  uint64_t wrapped() const { return now_ & mask_; }
  uint64_t wrap(Cycle t) const { return t & mask_; }
  void advance(Cycle cycles) { now_ += cycles; }

 private:
  Cycle now_ = 0;
  uint64_t mask_;
};

}  // namespace tcsim
