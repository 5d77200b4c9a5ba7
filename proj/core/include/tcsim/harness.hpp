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
#include <utility>
#include <vector>

#include "tcsim/generators.hpp"
#include "tcsim/simulator.hpp"

namespace tcsim {

// One attack run: replay the scenario trace, time the probes, and decode the
// secret by thresholding the decision probes' latencies (fast probe = bit 1).
struct LeakageReport {
  std::string scenario;
  bool defense = false;
  Cycle hit_threshold = 0;
  std::vector<ProbeSample> decision_probes;  // one per secret bit
  std::vector<uint8_t> inferred_bits;
  std::vector<uint8_t> ground_truth_bits;
  uint64_t correct_bits = 0;
  double accuracy = 0.0;      // correct_bits / bits
  uint64_t probe_hits = 0;    // probes under the threshold, counted over every probe in the run
  SimulationResult sim;
};

struct LevelOverhead {
  std::string name;
  double mpki_baseline = 0.0;
  double mpki_defense = 0.0;
  uint64_t first_access_misses = 0;       // defense run
  double first_access_fraction = 0.0;     // of the defense run's accesses at this level
};

// Same trace replayed on the same machine with the defense off and on.
struct OverheadReport {
  std::string workload;
  Cycle cycles_baseline = 0;
  Cycle cycles_defense = 0;
  double overhead_ratio = 0.0;  // defense cycles / baseline cycles
  uint64_t instructions = 0;
  uint64_t context_switches = 0;
  Cycle switch_cycles_defense = 0;
  std::vector<LevelOverhead> levels;
  SimulationResult baseline;
  SimulationResult defense;
};

struct SweepPoint {
  uint64_t llc_bytes = 0;
  double overhead_ratio = 0.0;
  double first_access_miss_ratio = 0.0;  // FA / (FA + ordinary misses) at the LLC, defense run
  uint64_t llc_evictions = 0;            // defense run
  double mpki_llc_baseline = 0.0;
  double mpki_llc_defense = 0.0;
};

struct SweepResult {
  std::string workload;
  std::vector<SweepPoint> points;
};

// Copies of `cfg` with the defense forced off / on; everything else untouched.
std::pair<RunConfig, RunConfig> make_config_pair(const RunConfig& cfg);

LeakageReport run_attack(const AttackScenario& scenario, const RunConfig& cfg);

// Throws ConfigError unless the two configs describe the same machine with
// defense off (first) and on (second).
OverheadReport run_overhead(const Trace& trace, const RunConfig& baseline_cfg,
                            const RunConfig& defense_cfg, const std::string& workload_name);

// Overhead pair per LLC size, everything else held fixed.
SweepResult run_sensitivity(const Trace& trace, const RunConfig& cfg,
                            const std::vector<uint64_t>& llc_sizes,
                            const std::string& workload_name);

}  // namespace tcsim
