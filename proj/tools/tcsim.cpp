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

// tcsim — trace-driven cache hierarchy simulator with a reuse-attack defense.
//
// Exit codes: 0 success, 1 simulation or experiment-contract failure
// (malformed trace, impossible schedule, attack self-check tripped),
// 2 configuration / usage / I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcsim/generators.hpp"
#include "tcsim/harness.hpp"
#include "tcsim/report_io.hpp"
#include "tcsim/simulator.hpp"
#include "tcsim/trace.hpp"
#include "tcsim/transpose_array.hpp"

namespace {

using namespace tcsim;

RunConfig load_cfg(const std::string& path) {
  return path.empty() ? RunConfig::defaults() : load_config_file(path);
}

void emit(const std::string& doc, const std::string& out_path) {
  if (out_path.empty())
    std::cout << doc;
  else
    write_text_file(out_path, doc);
}

std::vector<uint64_t> parse_size_list(const std::string& csv) {
  std::vector<uint64_t> sizes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) sizes.push_back(parse_size(item));
  }
  return sizes;
}

struct SimulateOpts {
  std::string trace_path, config_path, format = "csv", out;
  std::optional<bool> defense;
};

int cmd_simulate(const SimulateOpts& o) {
  RunConfig cfg = load_cfg(o.config_path);
  if (o.defense) cfg.defense = *o.defense;
  Trace trace = load_trace_file(o.trace_path);
  SimulationResult res = run_trace(trace, cfg);
  emit(o.format == "json" ? stats_to_json(res) : stats_to_csv(res), o.out);
  return 0;
}

struct AttackOpts {
  std::string scenario, config_path, format = "csv", out, chart;
  uint32_t key_bits = 64;
  uint64_t seed = 1;
  uint32_t iterations = 1;
  uint32_t lines = 256;
  std::vector<uint32_t> touches;
  bool touch_none = false;
  bool split_contexts = false;  // victim on hw context 1 instead of time-sharing 0
  std::optional<uint32_t> threshold;
  bool baseline_only = false, defense_only = false;
};

int cmd_attack(const AttackOpts& o) {
  RunConfig cfg = load_cfg(o.config_path);
  if (o.threshold) cfg.hit_threshold = *o.threshold;

  AttackScenario scenario;
  if (o.scenario == "micro") {
    MicrobenchParams mp;
    mp.lines = o.lines;
    mp.victim_touches = o.touches;
    mp.touch_none = o.touch_none;
    if (o.split_contexts) mp.victim_ctx = 1;
    scenario = gen_microbenchmark(mp);
  } else {
    RsaParams rp;
    rp.key_bits = RsaParams::random_key(o.key_bits, o.seed);
    rp.iterations_per_bit = o.iterations;
    if (o.split_contexts) rp.victim_ctx = 1;
    scenario = gen_rsa_attack(rp);
  }

  auto [cfg_off, cfg_on] = make_config_pair(cfg);
  std::optional<LeakageReport> base, def;
  if (!o.defense_only) base = run_attack(scenario, cfg_off);
  if (!o.baseline_only) def = run_attack(scenario, cfg_on);

  std::ostringstream doc;
  for (const auto* rep : {&base, &def})
    if (*rep) doc << (o.format == "json" ? leakage_to_json(**rep) : leakage_to_csv(**rep));
  emit(doc.str(), o.out);
  if (!o.chart.empty()) write_text_file(o.chart, probe_chart_svg(def ? *def : *base));

  // self-check: the attack must work without the defense and die with it
  bool ok = true;
  if (base && base->accuracy != 1.0) {
    std::cerr << "attack: baseline run failed to recover the secret (accuracy "
              << base->accuracy << ")\n";
    ok = false;
  }
  if (def && def->probe_hits != 0) {
    std::cerr << "attack: defense run still shows " << def->probe_hits << " probe hit(s)\n";
    ok = false;
  }
  return ok ? 0 : 1;
}

struct SweepOpts {
  std::string sizes_csv, trace_path, config_path, format = "csv", out, chart, label = "background";
  uint32_t procs = sweep_background_params().nprocs;
  uint64_t accesses = sweep_background_params().accesses;
  uint64_t seed = sweep_background_params().seed;
};

int cmd_sweep(const SweepOpts& o) {
  std::vector<uint64_t> sizes = parse_size_list(o.sizes_csv);
  if (sizes.size() < 2) throw ConfigError("sweep: need at least two LLC sizes (see --sizes)");

  RunConfig cfg = load_cfg(o.config_path);
  Trace trace;
  if (!o.trace_path.empty()) {
    trace = load_trace_file(o.trace_path);
  } else {
    BackgroundParams bp = sweep_background_params();
    bp.nprocs = o.procs;
    bp.accesses = o.accesses;
    bp.seed = o.seed;
    trace = gen_background(bp);
  }

  SweepResult sweep = run_sensitivity(trace, cfg, sizes, o.label);
  emit(o.format == "json" ? sweep_to_json(sweep) : sweep_to_csv(sweep), o.out);
  if (!o.chart.empty()) write_text_file(o.chart, sweep_chart_svg(sweep));
  return 0;
}

struct CompareOpts {
  std::string trace_path, config_path, format = "csv", out, chart, label;
};

int cmd_compare(const CompareOpts& o) {
  RunConfig cfg = load_cfg(o.config_path);
  Trace trace = load_trace_file(o.trace_path);
  std::string label = o.label.empty() ? o.trace_path : o.label;
  auto [off, on] = make_config_pair(cfg);
  OverheadReport rep = run_overhead(trace, off, on, label);
  emit(o.format == "json" ? overhead_to_json(rep) : overhead_to_csv(rep), o.out);
  if (!o.chart.empty()) write_text_file(o.chart, overhead_chart_svg(rep));
  return 0;
}

struct GenOpts {
  std::string kind, out;
  uint64_t seed = 1;
  // micro
  uint32_t lines = 256;
  std::vector<uint32_t> touches;
  bool touch_none = false;
  // rsa
  uint32_t key_bits = 64;
  uint32_t iterations = 1;
  // background
  uint32_t procs = 2;
  uint64_t accesses = 100000;
  uint32_t init_lines = 0;
  uint32_t private_lines = 4096, shared_lines = 1024, stream_lines = 0;
  bool stream_shared = false;
  uint32_t hot_lines = 0, hot_period = 4;
  uint32_t slice = 2000;
  double shared_frac = 0.3, stream_frac = 0.0, write_frac = 0.2;
};

int cmd_gen(const GenOpts& o) {
  Trace trace;
  if (o.kind == "micro") {
    MicrobenchParams mp;
    mp.lines = o.lines;
    mp.victim_touches = o.touches;
    mp.touch_none = o.touch_none;
    trace = gen_microbenchmark(mp).trace;
  } else if (o.kind == "rsa") {
    RsaParams rp;
    rp.key_bits = RsaParams::random_key(o.key_bits, o.seed);
    rp.iterations_per_bit = o.iterations;
    AttackScenario sc = gen_rsa_attack(rp);
    trace = std::move(sc.trace);
    std::cerr << "key (MSB first):";
    for (uint8_t b : sc.secret_bits) std::cerr << ' ' << int(b);
    std::cerr << '\n';
  } else {
    BackgroundParams bp;
    bp.nprocs = o.procs;
    bp.accesses = o.accesses;
    bp.init_lines = o.init_lines;
    bp.private_lines = o.private_lines;
    bp.shared_lines = o.shared_lines;
    bp.stream_lines = o.stream_lines;
    bp.stream_shared = o.stream_shared;
    bp.hot_lines = o.hot_lines;
    bp.hot_period = o.hot_period;
    bp.slice_events = o.slice;
    bp.shared_fraction = o.shared_frac;
    bp.stream_fraction = o.stream_frac;
    bp.write_fraction = o.write_frac;
    bp.seed = o.seed;
    trace = gen_background(bp);
  }
  write_trace_file(trace, o.out);
  std::cerr << "wrote " << trace.events.size() << " events to " << o.out << '\n';
  return 0;
}

struct DumpOpts {
  std::string stamps_csv;
  uint32_t bits = 8, contexts = 2;
  std::vector<std::string> sbits;  // "ctx:col"
  std::optional<uint64_t> compare;
  uint32_t compare_ctx = 0;
};

// accepts decimal or 0x-prefixed hex; whole-token match required
uint64_t parse_u64_arg(const std::string& text, const char* what) {
  try {
    size_t idx = 0;
    uint64_t v = std::stoull(text, &idx, 0);
    if (idx != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("dump-array: ") + what + ": cannot parse '" + text + "'");
  }
}

// debug view of the transposed metadata array, in both orientations
int cmd_dump_array(const DumpOpts& o) {
  std::vector<uint64_t> stamps;
  std::stringstream ss(o.stamps_csv);
  std::string item;
  while (std::getline(ss, item, ',')) stamps.push_back(parse_u64_arg(item, "--stamps"));
  if (stamps.empty()) throw ConfigError("dump-array: --stamps needs at least one value");

  TransposeArray arr(uint32_t(stamps.size()), o.bits, o.contexts);
  for (uint32_t c = 0; c < stamps.size(); ++c) arr.write_stamp(c, stamps[c]);
  for (const std::string& s : o.sbits) {
    size_t colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("dump-array: --sbit wants ctx:column");
    arr.write_sbit(uint32_t(parse_u64_arg(s.substr(colon + 1), "--sbit column")),
                   uint32_t(parse_u64_arg(s.substr(0, colon), "--sbit ctx")), true);
  }

  std::cout << "columns=" << stamps.size() << " bits=" << o.bits << " contexts=" << o.contexts
            << "\nrow view (one array row per line, MSB plane first):\n";
  auto print_row = [&](const std::string& name, uint32_t row_ctx, bool is_stamp, uint32_t bit) {
    std::cout << "  " << name << ": ";
    for (uint32_t c = 0; c < stamps.size(); ++c) {
      bool v = is_stamp ? ((arr.read_stamp(c) >> (o.bits - 1 - bit)) & 1) : arr.read_sbit(c, row_ctx);
      std::cout << (v ? '1' : '0');
    }
    std::cout << '\n';
  };
  for (uint32_t b = 0; b < o.bits; ++b)
    print_row("t" + std::to_string(o.bits - 1 - b), 0, true, b);
  for (uint32_t x = 0; x < o.contexts; ++x) print_row("s" + std::to_string(x), x, false, 0);

  std::cout << "column view:\n";
  for (uint32_t c = 0; c < stamps.size(); ++c) {
    std::cout << "  col " << c << ": stamp=" << arr.read_stamp(c) << " sbits=";
    for (uint32_t x = 0; x < o.contexts; ++x) std::cout << (arr.read_sbit(c, x) ? '1' : '0');
    std::cout << '\n';
  }

  if (o.compare) {
    auto res = arr.compare_and_reset(*o.compare, o.compare_ctx);
    std::cout << "compare ts=" << *o.compare << " ctx=" << o.compare_ctx
              << " iterations=" << res.iterations << "\n  newer:";
    for (uint32_t c = 0; c < stamps.size(); ++c)
      std::cout << ' ' << ((res.newer[c / 64] >> (c % 64)) & 1);
    std::cout << "\n  sbits after:";
    for (uint32_t c = 0; c < stamps.size(); ++c) std::cout << ' ' << arr.read_sbit(c, o.compare_ctx);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-driven cache hierarchy simulator with a reuse-attack defense"};
  app.require_subcommand(1);

  SimulateOpts so;
  CLI::App* sim = app.add_subcommand("simulate", "replay one trace and report per-level stats");
  sim->add_option("--trace", so.trace_path, "trace file")->required();
  sim->add_option("--config", so.config_path, "machine config JSON (defaults built in)");
  sim->add_flag("--defense,!--no-defense",
                [&so](int64_t v) { so.defense = v > 0; },
                "override the config's defense switch");
  sim->add_option("--format", so.format)->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--out", so.out, "write the report here instead of stdout");

  AttackOpts ao;
  CLI::App* atk = app.add_subcommand(
      "attack", "run a reuse attack with the defense off and on, self-checking the outcome");
  atk->add_option("scenario", ao.scenario, "micro | rsa")
      ->required()
      ->check(CLI::IsMember({"micro", "rsa"}));
  atk->add_option("--config", ao.config_path);
  atk->add_option("--key-bits", ao.key_bits, "rsa: secret length")->check(CLI::PositiveNumber);
  atk->add_option("--seed", ao.seed, "rsa: key generator seed");
  atk->add_option("--iterations", ao.iterations, "rsa: victim rounds per key bit")
      ->check(CLI::PositiveNumber);
  atk->add_option("--lines", ao.lines, "micro: probe array lines")->check(CLI::PositiveNumber);
  atk->add_option("--touch", ao.touches, "micro: line the victim writes (repeatable)");
  atk->add_flag("--touch-none", ao.touch_none, "micro: victim touches nothing");
  atk->add_flag("--split-contexts", ao.split_contexts, "victim on hw context 1, attacker on 0");
  atk->add_option(
      "--threshold",
      [&ao](const CLI::results_t& r) {
        ao.threshold = uint32_t(std::stoul(r[0]));
        return true;
      },
      "hit/miss latency threshold override");
  atk->add_flag("--baseline-only", ao.baseline_only);
  atk->add_flag("--defense-only", ao.defense_only);
  atk->add_option("--format", ao.format)->check(CLI::IsMember({"csv", "json"}));
  atk->add_option("--out", ao.out);
  atk->add_option("--chart", ao.chart, "probe latency chart (SVG)");

  SweepOpts wo;
  CLI::App* swp = app.add_subcommand("sweep", "LLC size sensitivity sweep, defense off vs on");
  swp->add_option("--sizes", wo.sizes_csv, "comma list, e.g. 2M,4M,8M")->required();
  swp->add_option("--trace", wo.trace_path, "trace file (default: generated background mix)");
  swp->add_option("--config", wo.config_path);
  swp->add_option("--label", wo.label, "workload name in the report");
  swp->add_option("--procs", wo.procs)->check(CLI::PositiveNumber);
  swp->add_option("--accesses", wo.accesses)->check(CLI::PositiveNumber);
  swp->add_option("--seed", wo.seed);
  swp->add_option("--format", wo.format)->check(CLI::IsMember({"csv", "json"}));
  swp->add_option("--out", wo.out);
  swp->add_option("--chart", wo.chart, "sweep chart (SVG)");

  CompareOpts co;
  CLI::App* cmp = app.add_subcommand("compare", "same trace with the defense off and on");
  cmp->add_option("--trace", co.trace_path)->required();
  cmp->add_option("--config", co.config_path);
  cmp->add_option("--label", co.label, "workload name in the report (default: trace path)");
  cmp->add_option("--format", co.format)->check(CLI::IsMember({"csv", "json"}));
  cmp->add_option("--out", co.out);
  cmp->add_option("--chart", co.chart, "MPKI chart (SVG)");

  GenOpts go;
  CLI::App* gen = app.add_subcommand("gen", "generate a trace file");
  gen->add_option("kind", go.kind, "micro | rsa | background")
      ->required()
      ->check(CLI::IsMember({"micro", "rsa", "background"}));
  gen->add_option("--out", go.out, "trace file to write")->required();
  gen->add_option("--seed", go.seed);
  gen->add_option("--lines", go.lines)->check(CLI::PositiveNumber);
  gen->add_option("--touch", go.touches);
  gen->add_flag("--touch-none", go.touch_none);
  gen->add_option("--key-bits", go.key_bits)->check(CLI::PositiveNumber);
  gen->add_option("--iterations", go.iterations)->check(CLI::PositiveNumber);
  gen->add_option("--procs", go.procs)->check(CLI::PositiveNumber);
  gen->add_option("--accesses", go.accesses)->check(CLI::PositiveNumber);
  gen->add_option("--init-lines", go.init_lines, "startup sweep of the private region, once per process");
  gen->add_option("--private-lines", go.private_lines);
  gen->add_option("--shared-lines", go.shared_lines);
  gen->add_option("--stream-lines", go.stream_lines);
  gen->add_flag("--stream-shared", go.stream_shared, "one global stream ring instead of per-process");
  gen->add_option("--hot-lines", go.hot_lines);
  gen->add_option("--hot-period", go.hot_period);
  gen->add_option("--slice", go.slice, "events per scheduling slice")->check(CLI::PositiveNumber);
  gen->add_option("--shared-frac", go.shared_frac);
  gen->add_option("--stream-frac", go.stream_frac);
  gen->add_option("--write-frac", go.write_frac);

  DumpOpts dopts;
  CLI::App* dmp = app.add_subcommand("dump-array", "inspect the transposed metadata array");
  dmp->add_option("--stamps", dopts.stamps_csv, "comma list of load stamps, one column each")
      ->required();
  dmp->add_option("--bits", dopts.bits)->check(CLI::Range(1u, 64u));
  dmp->add_option("--contexts", dopts.contexts)->check(CLI::PositiveNumber);
  dmp->add_option("--sbit", dopts.sbits, "set a seen bit, format ctx:column (repeatable)");
  dmp->add_option(
      "--compare",
      [&dopts](const CLI::results_t& r) {
        try {
          dopts.compare = parse_u64_arg(r[0], "--compare");
        } catch (const ConfigError&) {
          return false;  // surfaces as a parse error, exit code 2
        }
        return true;
      },
      "run one compare-and-reset against this preemption stamp");
  dmp->add_option("--compare-ctx", dopts.compare_ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) return cmd_simulate(so);
    if (*atk) return cmd_attack(ao);
    if (*swp) return cmd_sweep(wo);
    if (*cmp) return cmd_compare(co);
    if (*gen) return cmd_gen(go);
    if (*dmp) return cmd_dump_array(dopts);
  } catch (const TraceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
