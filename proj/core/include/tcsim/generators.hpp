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
#include <string>
#include <vector>

#include "tcsim/common.hpp"
#include "tcsim/trace.hpp"

namespace tcsim {

// All generators are pure: the same parameters produce byte-identical
// traces. Scheduling is emitted explicitly as SCHED events; slices are
// measured in trace events, since a generator has no notion of simulated
// time.

// An attack trace plus everything needed to score it: the secret the victim
// acted on and, for each secret bit, which PROBE's latency decides it.
struct AttackScenario {
  std::string kind;  // "micro" | "rsa"
  Trace trace;
  Pid attacker_pid = 1;
  Pid victim_pid = 2;
  std::vector<uint8_t> secret_bits;
  std::vector<size_t> decision_probe;  // secret bit -> index into the probe sequence
};

// Flush + reload over a shared array: the attacker flushes every line,
// yields to the victim, which writes a chosen subset, then the attacker
// probes every line. Bit i of the secret = "victim touched line i".
struct MicrobenchParams {
  uint32_t lines = 256;
  std::vector<uint32_t> victim_touches;  // empty = touch all
  bool touch_none = false;               // overrides victim_touches
  Addr array_base = 0x1000000;
  uint32_t line_size = 64;
  Pid attacker_pid = 1;
  Pid victim_pid = 2;
  CtxId attacker_ctx = 0;
  CtxId victim_ctx = 0;
};
AttackScenario gen_microbenchmark(const MicrobenchParams& p);

// Square-and-multiply exponentiation victim. Per key bit the attacker
// flushes the three routine entry points, the victim fetches
// square/reduce[/multiply/reduce for a 1 bit], and the attacker probes all
// three. The multiply probe decides the bit.
struct RsaParams {
  std::vector<uint8_t> key_bits;  // MSB first
  uint32_t iterations_per_bit = 1;
  Addr square_addr = 0x2000000;
  Addr multiply_addr = 0x2000040;
  Addr reduce_addr = 0x2000080;
  uint32_t line_size = 64;
  Pid attacker_pid = 1;
  Pid victim_pid = 2;
  CtxId attacker_ctx = 0;
  CtxId victim_ctx = 0;

  static std::vector<uint8_t> random_key(uint32_t bits, uint64_t seed);
};
AttackScenario gen_rsa_attack(const RsaParams& p);

// Multi-process background load for overhead measurements. Every process
// owns a private region and a cycling stream region, and all of them share
// a uniformly sampled region plus, optionally, a hot region (think shared
// library text): on every hot_period-th round-robin rotation each process
// spends its whole slice sweeping the hot region front to back, nothing
// interleaved; on the other rotations slices draw from the weighted
// regions. With init_lines > 0 each process first sweeps the leading
// init_lines of its private region once — a startup working set that is
// never revisited unless private draws land on it. Processes round-robin
// on one context, SCHED before each slice.
struct BackgroundParams {
  uint32_t nprocs = 2;
  uint32_t init_lines = 0;         // startup sweep of the private region, once per process
  uint32_t private_lines = 4096;   // per process
  uint32_t shared_lines = 1024;    // one region for everyone
  uint32_t stream_lines = 0;       // per process; 0 disables the stream
  bool stream_shared = false;      // one global ring + pointer instead of per-process ones
  uint32_t hot_lines = 0;          // burst-walked shared region; 0 disables
  uint32_t hot_period = 4;         // walk every Nth rotation
  uint64_t accesses = 100000;      // total across processes
  uint32_t slice_events = 2000;
  double shared_fraction = 0.3;
  double stream_fraction = 0.0;
  double write_fraction = 0.2;
  uint32_t line_size = 64;
  CtxId ctx = 0;
  uint64_t seed = 1;
};
Trace gen_background(const BackgroundParams& p);

// Frozen parameters for LLC-size sweeps. Six processes time-share one
// context. Each sweeps a 512 KiB startup set once, then cycles a private
// 512 KiB stream ring, and every second rotation all six sweep a shared
// 512 KiB hot region. The live working set (rings + hot region, 3.5 MiB)
// thrashes a 2 MiB LLC end to end: stream rings cycle without a single
// hit, and between hot sweeps the ring traffic floods every set, so each
// sweep group pays one refill per hot line plus a first-access miss for
// each of the five follower processes. From 4 MiB up the working set
// fits, nothing is evicted after warmup, and the first-access share of
// misses is pinned at its warmup value — diluted by the 3 MiB of
// startup-set cold misses. The ratio is therefore strictly larger at
// 2 MiB and exactly equal at 4 and 8 MiB.
BackgroundParams sweep_background_params();

}  // namespace tcsim
