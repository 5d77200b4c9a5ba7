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

#include <string>
#include <vector>

#include "tcsim/common.hpp"

namespace tcsim {

// One line of trace text: `seq pid ctx op [0xaddr]`.
// Grammar and validity rules live in docs/trace-format.md.
enum class Op : uint8_t { Read, Write, Flush, IFetch, Sched, Probe };

const char* op_name(Op op);

struct AccessEvent {
  uint64_t seq = 0;
  Pid pid = 0;
  CtxId ctx = 0;
  Op op = Op::Read;
  Addr addr = 0;  // meaningless for Sched

  bool operator==(const AccessEvent&) const = default;
};

struct Trace {
  std::vector<AccessEvent> events;

  size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

// Parses and validates trace text. Enforces strictly increasing sequence
// numbers and that every access runs under the pid most recently scheduled
// on its context. Throws TraceError citing the offending 1-based line.
Trace parse_trace(const std::string& text);
Trace load_trace_file(const std::string& path);

std::string serialize_trace(const Trace& trace);
void write_trace_file(const Trace& trace, const std::string& path);

}  // namespace tcsim
