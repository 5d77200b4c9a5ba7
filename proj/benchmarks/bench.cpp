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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tcsim/generators.hpp"
#include "tcsim/hierarchy.hpp"
#include "tcsim/simulator.hpp"
#include "tcsim/trace.hpp"
#include "tcsim/transpose_array.hpp"

namespace {

using namespace tcsim;

Trace bench_trace(uint64_t accesses) {
  BackgroundParams p;
  p.nprocs = 4;
  p.private_lines = 4096;
  p.shared_lines = 1024;
  p.accesses = accesses;
  p.slice_events = 500;
  return gen_background(p);
}

void BM_AccessThroughput(benchmark::State& state) {
  Trace t = bench_trace(20000);
  RunConfig cfg = RunConfig::defaults();
  cfg.defense = state.range(0) != 0;
  for (auto _ : state) {
    SimulationResult res = run_trace(t, cfg);
    benchmark::DoNotOptimize(res.cycles);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(t.events.size()));
  state.SetLabel(cfg.defense ? "defense" : "baseline");
}
BENCHMARK(BM_AccessThroughput)->Arg(0)->Arg(1);

void BM_CompareAndReset(benchmark::State& state) {
  const uint32_t columns = uint32_t(state.range(0));
  TransposeArray arr(columns, 32, 2);
  std::mt19937_64 rng(42);
  for (uint32_t c = 0; c < columns; ++c) {
    arr.write_stamp(c, rng() & 0xFFFFFFFFull);
    arr.write_sbit(c, 0, true);
  }
  uint64_t ts = 0x12345678;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arr.compare_and_reset(ts, 0));
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * columns);
}
BENCHMARK(BM_CompareAndReset)->Arg(512)->Arg(4096)->Arg(32768)->Arg(131072);

void BM_ContextSwitch(benchmark::State& state) {
  RunConfig cfg = RunConfig::defaults();
  cfg.defense = true;
  cfg.switch_cost_charged = false;
  CacheHierarchy hw(cfg);
  // touch a working set so the save/restore rows are not trivially empty
  hw.context_switch(1, 0);
  for (Addr a = 0; a < 512 * 64; a += 64) hw.access(1, 0, 0x100000 + a, AccessKind::Read);
  hw.context_switch(2, 0);
  for (Addr a = 0; a < 512 * 64; a += 64) hw.access(2, 0, 0x200000 + a, AccessKind::Read);
  Pid next = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hw.context_switch(next, 0));
    next = next == 1 ? 2 : 1;
  }
}
BENCHMARK(BM_ContextSwitch);

void BM_TraceParse(benchmark::State& state) {
  std::string text = serialize_trace(bench_trace(20000));
  for (auto _ : state) {
    Trace t = parse_trace(text);
    benchmark::DoNotOptimize(t.events.size());
  }
  state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(text.size()));
}
BENCHMARK(BM_TraceParse);

}  // namespace

BENCHMARK_MAIN();
