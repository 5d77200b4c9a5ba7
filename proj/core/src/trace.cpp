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

#include "tcsim/trace.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace tcsim {

const char* op_name(Op op) {
  switch (op) {
    case Op::Read: return "R";
    case Op::Write: return "W";
    case Op::Flush: return "F";
    case Op::IFetch: return "I";
    case Op::Sched: return "SCHED";
    case Op::Probe: return "PROBE";
  }
  return "?";
}

namespace {

std::optional<Op> op_from(std::string_view s) {
  if (s == "R") return Op::Read;
  if (s == "W") return Op::Write;
  if (s == "F") return Op::Flush;
  if (s == "I") return Op::IFetch;
  if (s == "SCHED") return Op::Sched;
  if (s == "PROBE") return Op::Probe;
  return std::nullopt;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

uint64_t parse_u64(std::string_view s, size_t line_no, const char* what, int base = 10) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || p != s.data() + s.size())
    throw TraceError(line_no, std::string("malformed ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

Trace parse_trace(const std::string& text) {
  Trace trace;
  std::map<CtxId, Pid> scheduled;
  std::optional<uint64_t> last_seq;

  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (size_t h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto f = split_ws(line);
    if (f.empty()) continue;

    if (f.size() < 4) throw TraceError(line_no, "malformed line: expected `seq pid ctx op [addr]`");

    AccessEvent ev;
    ev.seq = parse_u64(f[0], line_no, "seq");
    ev.pid = Pid(parse_u64(f[1], line_no, "pid"));
    ev.ctx = CtxId(parse_u64(f[2], line_no, "ctx"));
    auto op = op_from(f[3]);
    if (!op) throw TraceError(line_no, "malformed op '" + std::string(f[3]) + "'");
    ev.op = *op;

    if (ev.op == Op::Sched) {
      if (f.size() != 4) throw TraceError(line_no, "SCHED takes no address");
    } else {
      if (f.size() != 5) throw TraceError(line_no, "missing address");
      std::string_view a = f[4];
      if (a.size() < 3 || a[0] != '0' || (a[1] != 'x' && a[1] != 'X'))
        throw TraceError(line_no, "malformed address '" + std::string(a) + "' (expected 0x...)");
      ev.addr = parse_u64(a.substr(2), line_no, "address", 16);
    }
    if (f.size() > 5) throw TraceError(line_no, "trailing fields");

    if (last_seq && ev.seq <= *last_seq)
      throw TraceError(line_no, "non-monotonic seq " + std::to_string(ev.seq) + " after " +
                                    std::to_string(*last_seq));
    last_seq = ev.seq;

    if (ev.op == Op::Sched) {
      scheduled[ev.ctx] = ev.pid;
    } else {
      auto it = scheduled.find(ev.ctx);
      if (it == scheduled.end() || it->second != ev.pid)
        throw TraceError(line_no, "access before schedule: pid " + std::to_string(ev.pid) +
                                      " is not scheduled on ctx " + std::to_string(ev.ctx));
    }

    trace.events.push_back(ev);
  }
  return trace;
}

Trace load_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  for (const AccessEvent& ev : trace.events) {
    out << ev.seq << ' ' << ev.pid << ' ' << ev.ctx << ' ' << op_name(ev.op);
    if (ev.op != Op::Sched) out << " 0x" << std::hex << ev.addr << std::dec;
    out << '\n';
  }
  return out.str();
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize_trace(trace);
}

}  // namespace tcsim
