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
#include <stdexcept>
#include <string>

namespace tcsim {

using Addr = uint64_t;   // byte address
using Cycle = uint64_t;  // absolute cycle count (never wrapped)
using Pid = uint32_t;    // software process id
using CtxId = uint32_t;  // hardware context id

// Bad or inconsistent configuration (geometry, latencies, flags).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed trace text. `line` is 1-based; 0 means "not tied to a line".
class TraceError : public std::runtime_error {
 public:
  TraceError(size_t line, const std::string& msg)
      : std::runtime_error(line ? "trace line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// A structurally valid trace asked the machine to do something impossible
// (access on an unknown hardware context, access by a descheduled pid, ...).
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

constexpr uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

}  // namespace tcsim
