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

#include "tcsim/generators.hpp"

#include <algorithm>
#include <random>

namespace tcsim {

namespace {

class TraceBuilder {
 public:
  void sched(Pid pid, CtxId ctx) { push(pid, ctx, Op::Sched, 0); }
  void push(Pid pid, CtxId ctx, Op op, Addr addr) {
    trace_.events.push_back(AccessEvent{seq_++, pid, ctx, op, addr});
  }
  Trace take() { return std::move(trace_); }

 private:
  Trace trace_;
  uint64_t seq_ = 1;
};

}  // namespace

AttackScenario gen_microbenchmark(const MicrobenchParams& p) {
  if (p.lines == 0) throw ConfigError("microbenchmark: lines must be positive");
  if (p.attacker_pid == p.victim_pid)
    throw ConfigError("microbenchmark: attacker and victim need distinct pids");
  if (!is_pow2(p.line_size)) throw ConfigError("microbenchmark: line_size must be a power of two");

  std::vector<uint32_t> touches = p.victim_touches;
  if (p.touch_none)
    touches.clear();
  else if (touches.empty()) {
    touches.resize(p.lines);
    for (uint32_t i = 0; i < p.lines; ++i) touches[i] = i;
  }
  for (uint32_t t : touches)
    if (t >= p.lines) throw ConfigError("microbenchmark: victim touch index out of range");

  auto line_addr = [&](uint32_t i) { return p.array_base + Addr(i) * p.line_size; };

  TraceBuilder tb;
  tb.sched(p.attacker_pid, p.attacker_ctx);
  for (uint32_t i = 0; i < p.lines; ++i)
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Flush, line_addr(i));

  tb.sched(p.victim_pid, p.victim_ctx);
  for (uint32_t t : touches) tb.push(p.victim_pid, p.victim_ctx, Op::Write, line_addr(t));

  tb.sched(p.attacker_pid, p.attacker_ctx);
  for (uint32_t i = 0; i < p.lines; ++i)
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Probe, line_addr(i));

  AttackScenario sc;
  sc.kind = "micro";
  sc.trace = tb.take();
  sc.attacker_pid = p.attacker_pid;
  sc.victim_pid = p.victim_pid;
  sc.secret_bits.assign(p.lines, 0);
  for (uint32_t t : touches) sc.secret_bits[t] = 1;
  sc.decision_probe.resize(p.lines);
  for (uint32_t i = 0; i < p.lines; ++i) sc.decision_probe[i] = i;
  return sc;
}

std::vector<uint8_t> RsaParams::random_key(uint32_t bits, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint8_t> key(bits);
  for (auto& b : key) b = uint8_t(rng() & 1);
  return key;
}

AttackScenario gen_rsa_attack(const RsaParams& p) {
  if (p.key_bits.empty()) throw ConfigError("rsa: key must have at least one bit");
  if (p.iterations_per_bit == 0) throw ConfigError("rsa: iterations_per_bit must be positive");
  if (p.attacker_pid == p.victim_pid)
    throw ConfigError("rsa: attacker and victim need distinct pids");
  if (!is_pow2(p.line_size)) throw ConfigError("rsa: line_size must be a power of two");
  Addr sq = p.square_addr / p.line_size, mu = p.multiply_addr / p.line_size,
       re = p.reduce_addr / p.line_size;
  if (sq == mu || sq == re || mu == re)
    throw ConfigError("rsa: square/multiply/reduce must live on distinct cache lines");

  TraceBuilder tb;
  AttackScenario sc;
  sc.kind = "rsa";
  sc.attacker_pid = p.attacker_pid;
  sc.victim_pid = p.victim_pid;
  sc.secret_bits = p.key_bits;

  size_t probes = 0;
  for (size_t b = 0; b < p.key_bits.size(); ++b) {
    tb.sched(p.attacker_pid, p.attacker_ctx);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Flush, p.square_addr);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Flush, p.multiply_addr);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Flush, p.reduce_addr);

    tb.sched(p.victim_pid, p.victim_ctx);
    for (uint32_t it = 0; it < p.iterations_per_bit; ++it) {
      // square, reduce, and for a set bit multiply + reduce again
      tb.push(p.victim_pid, p.victim_ctx, Op::IFetch, p.square_addr);
      tb.push(p.victim_pid, p.victim_ctx, Op::IFetch, p.reduce_addr);
      if (p.key_bits[b]) {
        tb.push(p.victim_pid, p.victim_ctx, Op::IFetch, p.multiply_addr);
        tb.push(p.victim_pid, p.victim_ctx, Op::IFetch, p.reduce_addr);
      }
    }

    tb.sched(p.attacker_pid, p.attacker_ctx);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Probe, p.square_addr);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Probe, p.multiply_addr);
    tb.push(p.attacker_pid, p.attacker_ctx, Op::Probe, p.reduce_addr);
    sc.decision_probe.push_back(probes + 1);  // the multiply probe
    probes += 3;
  }

  sc.trace = tb.take();
  return sc;
}

Trace gen_background(const BackgroundParams& p) {
  if (p.nprocs == 0) throw ConfigError("background: nprocs must be positive");
  if (p.private_lines == 0) throw ConfigError("background: private_lines must be positive");
  if (p.slice_events == 0) throw ConfigError("background: slice_events must be positive");
  if (!is_pow2(p.line_size)) throw ConfigError("background: line_size must be a power of two");
  if (p.shared_fraction < 0 || p.stream_fraction < 0 ||
      p.shared_fraction + p.stream_fraction > 1.0)
    throw ConfigError("background: shared_fraction + stream_fraction must stay within [0,1]");
  if (p.write_fraction < 0 || p.write_fraction > 1.0)
    throw ConfigError("background: write_fraction must be in [0,1]");
  if (p.shared_fraction > 0 && p.shared_lines == 0)
    throw ConfigError("background: shared_fraction needs shared_lines > 0");
  if (p.stream_fraction > 0 && p.stream_lines == 0)
    throw ConfigError("background: stream_fraction needs stream_lines > 0");
  if (p.hot_lines > 0 && p.hot_period == 0)
    throw ConfigError("background: hot_period must be positive");

  constexpr Addr kSharedBase = 0x10000000;
  constexpr Addr kHotBase = 0x18000000;
  constexpr Addr kPrivateBase = 0x20000000;
  constexpr Addr kPrivateStride = 0x1000000;   // 16 MiB apart
  constexpr Addr kStreamBase = 0x40000000;
  constexpr Addr kStreamStride = 0x10000000;   // 256 MiB apart
  if (Addr(p.shared_lines) * p.line_size > kHotBase - kSharedBase)
    throw ConfigError("background: shared region exceeds its address budget");
  if (Addr(p.hot_lines) * p.line_size > kPrivateBase - kHotBase)
    throw ConfigError("background: hot region exceeds its address budget");
  if (Addr(std::max(p.private_lines, p.init_lines)) * p.line_size > kPrivateStride)
    throw ConfigError("background: private region exceeds its address budget");
  if (Addr(p.stream_lines) * p.line_size > kStreamStride)
    throw ConfigError("background: stream region exceeds its address budget");

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<uint64_t> stream_ptr(p.nprocs, 0);

  TraceBuilder tb;
  uint64_t emitted = 0;
  if (p.init_lines > 0) {
    for (uint32_t proc = 0; proc < p.nprocs && emitted < p.accesses; ++proc) {
      tb.sched(proc + 1, p.ctx);
      for (uint32_t i = 0; i < p.init_lines && emitted < p.accesses; ++i, ++emitted)
        tb.push(proc + 1, p.ctx, Op::Read,
                kPrivateBase + Addr(proc) * kPrivateStride + Addr(i) * p.line_size);
    }
  }
  uint64_t slice_index = 0;
  while (emitted < p.accesses) {
    uint32_t proc = uint32_t(slice_index % p.nprocs);
    Pid pid = proc + 1;
    tb.sched(pid, p.ctx);
    if (p.hot_lines > 0 && (slice_index / p.nprocs) % p.hot_period == 0) {
      // Warm phase: each process sweeps the shared hot region front to back
      // with nothing interleaved, so a sweep group evicts none of its own
      // lines and every process after the first finds them still resident.
      for (uint32_t i = 0; i < p.hot_lines && emitted < p.accesses; ++i, ++emitted)
        tb.push(pid, p.ctx, Op::Read, kHotBase + Addr(i) * p.line_size);
      ++slice_index;
      continue;
    }
    for (uint32_t e = 0; e < p.slice_events && emitted < p.accesses; ++e, ++emitted) {
      double r = unit(rng);
      Addr addr;
      if (p.stream_fraction > 0 && r < p.stream_fraction) {
        uint32_t owner = p.stream_shared ? 0 : proc;
        addr = kStreamBase + Addr(owner) * kStreamStride +
               stream_ptr[owner] * p.line_size;
        stream_ptr[owner] = (stream_ptr[owner] + 1) % p.stream_lines;
      } else if (r < p.stream_fraction + p.shared_fraction) {
        addr = kSharedBase + Addr(rng() % p.shared_lines) * p.line_size;
      } else {
        addr = kPrivateBase + Addr(proc) * kPrivateStride +
               Addr(rng() % p.private_lines) * p.line_size;
      }
      Op op = unit(rng) < p.write_fraction ? Op::Write : Op::Read;
      tb.push(pid, p.ctx, op, addr);
    }
    ++slice_index;
  }
  return tb.take();
}

BackgroundParams sweep_background_params() {
  // Every region holds a multiple of 8192 lines, so occupancy per set is an
  // exact integer for any LLC from 512 KiB to 8 MiB, and one time slice
  // advances a stream ring by exactly one full lap, so ring windows never
  // overlap between laps.
  BackgroundParams p;
  p.nprocs = 6;
  p.init_lines = 8192;    // 512 KiB startup set per process, swept once
  p.private_lines = 512;  // never drawn at these weights; kept valid
  p.shared_lines = 0;
  p.stream_lines = 8192;  // 512 KiB ring per process
  p.hot_lines = 8192;     // 512 KiB shared sweep
  p.hot_period = 2;
  p.accesses = 638976;    // init phase + six hot/stream rounds
  p.slice_events = 8192;
  p.shared_fraction = 0.0;
  p.stream_fraction = 1.0;
  p.write_fraction = 0.2;
  p.line_size = 64;
  p.seed = 1;
  return p;
}

}  // namespace tcsim
