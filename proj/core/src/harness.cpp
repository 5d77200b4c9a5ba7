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

#include "tcsim/harness.hpp"

namespace tcsim {

std::pair<RunConfig, RunConfig> make_config_pair(const RunConfig& cfg) {
  RunConfig off = cfg, on = cfg;
  off.defense = false;
  on.defense = true;
  return {off, on};
}

LeakageReport run_attack(const AttackScenario& scenario, const RunConfig& cfg) {
  cfg.validate();
  if (scenario.decision_probe.size() != scenario.secret_bits.size())
    throw ConfigError("attack scenario: one decision probe per secret bit required");

  LeakageReport rep;
  rep.scenario = scenario.kind;
  rep.defense = cfg.defense;
  rep.hit_threshold = cfg.effective_hit_threshold();
  rep.sim = run_trace(scenario.trace, cfg);
  rep.ground_truth_bits = scenario.secret_bits;
  for (const ProbeSample& p : rep.sim.probes)
    if (p.latency < rep.hit_threshold) ++rep.probe_hits;

  for (size_t i = 0; i < scenario.decision_probe.size(); ++i) {
    size_t idx = scenario.decision_probe[i];
    if (idx >= rep.sim.probes.size())
      throw ConfigError("attack scenario: decision probe index out of range");
    const ProbeSample& probe = rep.sim.probes[idx];
    rep.decision_probes.push_back(probe);
    uint8_t guess = probe.latency < rep.hit_threshold ? 1 : 0;
    rep.inferred_bits.push_back(guess);
    if (guess == scenario.secret_bits[i]) ++rep.correct_bits;
  }
  rep.accuracy = rep.inferred_bits.empty()
                     ? 0.0
                     : double(rep.correct_bits) / double(rep.inferred_bits.size());
  return rep;
}

OverheadReport run_overhead(const Trace& trace, const RunConfig& baseline_cfg,
                            const RunConfig& defense_cfg, const std::string& workload_name) {
  baseline_cfg.validate();
  defense_cfg.validate();
  if (!baseline_cfg.same_machine(defense_cfg))
    throw ConfigError("overhead comparison: the two configs describe different machines");
  if (baseline_cfg.defense || !defense_cfg.defense)
    throw ConfigError("overhead comparison: expects defense off in the first config, on in the second");

  OverheadReport rep;
  rep.workload = workload_name;
  rep.baseline = run_trace(trace, baseline_cfg);
  rep.defense = run_trace(trace, defense_cfg);
  rep.cycles_baseline = rep.baseline.cycles;
  rep.cycles_defense = rep.defense.cycles;
  rep.overhead_ratio =
      rep.cycles_baseline ? double(rep.cycles_defense) / double(rep.cycles_baseline) : 0.0;
  rep.instructions = rep.defense.instructions;
  rep.context_switches = rep.defense.context_switches;
  rep.switch_cycles_defense = rep.defense.switch_cycles;

  for (size_t i = 0; i < rep.defense.cache_names.size(); ++i) {
    const CacheStats& def = rep.defense.cache_stats[i];
    LevelOverhead lv;
    lv.name = rep.defense.cache_names[i];
    lv.mpki_baseline = rep.baseline.mpki(i);
    lv.mpki_defense = rep.defense.mpki(i);
    lv.first_access_misses = def.first_access_misses;
    lv.first_access_fraction =
        def.accesses() ? double(def.first_access_misses) / double(def.accesses()) : 0.0;
    rep.levels.push_back(lv);
  }
  return rep;
}

SweepResult run_sensitivity(const Trace& trace, const RunConfig& cfg,
                            const std::vector<uint64_t>& llc_sizes,
                            const std::string& workload_name) {
  if (llc_sizes.empty()) throw ConfigError("sweep: need at least one LLC size");

  SweepResult sweep;
  sweep.workload = workload_name;
  for (uint64_t size : llc_sizes) {
    RunConfig sized = cfg;
    sized.lower_levels.back().size_bytes = size;
    auto [off, on] = make_config_pair(sized);
    OverheadReport rep = run_overhead(trace, off, on, workload_name);

    size_t llc = rep.defense.cache_stats.size() - 1;
    const CacheStats& def = rep.defense.cache_stats[llc];
    SweepPoint pt;
    pt.llc_bytes = size;
    pt.overhead_ratio = rep.overhead_ratio;
    uint64_t denom = def.first_access_misses + def.misses;
    pt.first_access_miss_ratio = denom ? double(def.first_access_misses) / double(denom) : 0.0;
    pt.llc_evictions = def.evictions;
    pt.mpki_llc_baseline = rep.levels[llc].mpki_baseline;
    pt.mpki_llc_defense = rep.levels[llc].mpki_defense;
    sweep.points.push_back(pt);
  }
  return sweep;
}

}  // namespace tcsim
