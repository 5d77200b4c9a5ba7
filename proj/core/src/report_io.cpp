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

#include "tcsim/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tcsim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string hex_addr(Addr a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(a));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json stats_json_body(const SimulationResult& res) {
  ordered_json j;
  j["cycles"] = res.cycles;
  j["instructions"] = res.instructions;
  j["context_switches"] = res.context_switches;
  j["switch_cycles"] = res.switch_cycles;
  j["caches"] = ordered_json::array();
  for (size_t i = 0; i < res.cache_names.size(); ++i) {
    const CacheStats& s = res.cache_stats[i];
    ordered_json c;
    c["name"] = res.cache_names[i];
    c["hits"] = s.hits;
    c["misses"] = s.misses;
    c["first_access_misses"] = s.first_access_misses;
    c["fills"] = s.fills;
    c["evictions"] = s.evictions;
    c["flush_invalidations"] = s.flush_invalidations;
    c["writebacks"] = s.writebacks;
    c["mpki"] = res.mpki(i);
    j["caches"].push_back(std::move(c));
  }
  return j;
}

// shared scaffolding for the charts: fixed canvas, light grid, no text wrap
constexpr int kW = 640, kH = 360;
constexpr int kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string svg_open(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
    << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"#ffffff\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << title << "</text>\n";
  return s.str();
}

void svg_axes(std::ostringstream& s) {
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kH - kBottom << "\" stroke=\"#444444\"/>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
    << "\" y2=\"" << kH - kBottom << "\" stroke=\"#444444\"/>\n";
}

double plot_y(double v, double vmax) {
  double h = kH - kTop - kBottom;
  if (vmax <= 0) return kH - kBottom;
  return kH - kBottom - (v / vmax) * h;
}

void svg_ylabel(std::ostringstream& s, double vmax, const std::string& unit) {
  s << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fixed(vmax, 2)
    << "</text>\n"
    << "<text x=\"" << kLeft - 6 << "\" y=\"" << kH - kBottom
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n"
    << "<text x=\"14\" y=\"" << (kTop + kH - kBottom) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 "
    << (kTop + kH - kBottom) / 2 << ")\">" << unit << "</text>\n";
}

}  // namespace

std::string stats_to_csv(const SimulationResult& res) {
  std::ostringstream out;
  out << "# " << kStatsCsvTag << "\n";
  out << "# cycles=" << res.cycles << " instructions=" << res.instructions
      << " context_switches=" << res.context_switches << " switch_cycles=" << res.switch_cycles
      << "\n";
  out << "cache,hits,misses,first_access_misses,fills,evictions,flush_invalidations,writebacks,"
         "mpki\n";
  for (size_t i = 0; i < res.cache_names.size(); ++i) {
    const CacheStats& s = res.cache_stats[i];
    out << csv_field(res.cache_names[i]) << ',' << s.hits << ',' << s.misses << ','
        << s.first_access_misses << ',' << s.fills << ',' << s.evictions << ','
        << s.flush_invalidations << ',' << s.writebacks << ',' << fixed(res.mpki(i)) << '\n';
  }
  return out.str();
}

std::string leakage_to_csv(const LeakageReport& rep) {
  std::ostringstream out;
  out << "# " << kLeakageCsvTag << "\n";
  out << "# scenario=" << rep.scenario << " defense=" << (rep.defense ? 1 : 0)
      << " threshold=" << rep.hit_threshold << " probe_hits=" << rep.probe_hits << "/"
      << rep.sim.probes.size() << " correct=" << rep.correct_bits << "/"
      << rep.inferred_bits.size() << " accuracy=" << fixed(rep.accuracy) << "\n";
  out << "bit,probe_seq,addr,latency,inferred,truth\n";
  for (size_t i = 0; i < rep.decision_probes.size(); ++i) {
    const ProbeSample& p = rep.decision_probes[i];
    out << i << ',' << p.seq << ',' << hex_addr(p.addr) << ',' << p.latency << ','
        << int(rep.inferred_bits[i]) << ',' << int(rep.ground_truth_bits[i]) << '\n';
  }
  return out.str();
}

std::string overhead_to_csv(const OverheadReport& rep) {
  std::ostringstream out;
  out << "# " << kOverheadCsvTag << "\n";
  out << "# workload=" << rep.workload << " cycles_baseline=" << rep.cycles_baseline
      << " cycles_defense=" << rep.cycles_defense
      << " overhead_ratio=" << fixed(rep.overhead_ratio)
      << " instructions=" << rep.instructions << " context_switches=" << rep.context_switches
      << " switch_cycles_defense=" << rep.switch_cycles_defense << "\n";
  out << "workload,cache,overhead_ratio,mpki_baseline,mpki_defense,first_access_misses,"
         "first_access_fraction\n";
  for (const LevelOverhead& lv : rep.levels) {
    out << csv_field(rep.workload) << ',' << csv_field(lv.name) << ','
        << fixed(rep.overhead_ratio) << ',' << fixed(lv.mpki_baseline) << ','
        << fixed(lv.mpki_defense) << ',' << lv.first_access_misses << ','
        << fixed(lv.first_access_fraction) << '\n';
  }
  return out.str();
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "# " << kSweepCsvTag << "\n";
  out << "# workload=" << sweep.workload << "\n";
  out << "llc_bytes,overhead_ratio,first_access_miss_ratio,llc_evictions,mpki_llc_baseline,"
         "mpki_llc_defense\n";
  for (const SweepPoint& pt : sweep.points) {
    out << pt.llc_bytes << ',' << fixed(pt.overhead_ratio) << ','
        << fixed(pt.first_access_miss_ratio) << ',' << pt.llc_evictions << ','
        << fixed(pt.mpki_llc_baseline) << ',' << fixed(pt.mpki_llc_defense) << '\n';
  }
  return out.str();
}

std::string stats_to_json(const SimulationResult& res) {
  return stats_json_body(res).dump(2) + "\n";
}

std::string leakage_to_json(const LeakageReport& rep) {
  ordered_json j;
  j["scenario"] = rep.scenario;
  j["defense"] = rep.defense;
  j["hit_threshold"] = rep.hit_threshold;
  j["bits"] = rep.inferred_bits.size();
  j["correct_bits"] = rep.correct_bits;
  j["accuracy"] = rep.accuracy;
  j["probe_hits"] = rep.probe_hits;
  j["total_probes"] = rep.sim.probes.size();
  j["probes"] = ordered_json::array();
  for (size_t i = 0; i < rep.decision_probes.size(); ++i) {
    const ProbeSample& p = rep.decision_probes[i];
    ordered_json e;
    e["bit"] = i;
    e["probe_seq"] = p.seq;
    e["addr"] = hex_addr(p.addr);
    e["latency"] = p.latency;
    e["inferred"] = int(rep.inferred_bits[i]);
    e["truth"] = int(rep.ground_truth_bits[i]);
    j["probes"].push_back(std::move(e));
  }
  j["stats"] = stats_json_body(rep.sim);
  return j.dump(2) + "\n";
}

std::string overhead_to_json(const OverheadReport& rep) {
  ordered_json j;
  j["workload"] = rep.workload;
  j["cycles_baseline"] = rep.cycles_baseline;
  j["cycles_defense"] = rep.cycles_defense;
  j["overhead_ratio"] = rep.overhead_ratio;
  j["instructions"] = rep.instructions;
  j["context_switches"] = rep.context_switches;
  j["switch_cycles_defense"] = rep.switch_cycles_defense;
  j["levels"] = ordered_json::array();
  for (const LevelOverhead& lv : rep.levels) {
    ordered_json e;
    e["name"] = lv.name;
    e["mpki_baseline"] = lv.mpki_baseline;
    e["mpki_defense"] = lv.mpki_defense;
    e["first_access_misses"] = lv.first_access_misses;
    e["first_access_fraction"] = lv.first_access_fraction;
    j["levels"].push_back(std::move(e));
  }
  j["baseline"] = stats_json_body(rep.baseline);
  j["defense"] = stats_json_body(rep.defense);
  return j.dump(2) + "\n";
}

std::string sweep_to_json(const SweepResult& sweep) {
  ordered_json j;
  j["workload"] = sweep.workload;
  j["points"] = ordered_json::array();
  for (const SweepPoint& pt : sweep.points) {
    ordered_json e;
    e["llc_bytes"] = pt.llc_bytes;
    e["overhead_ratio"] = pt.overhead_ratio;
    e["first_access_miss_ratio"] = pt.first_access_miss_ratio;
    e["llc_evictions"] = pt.llc_evictions;
    e["mpki_llc_baseline"] = pt.mpki_llc_baseline;
    e["mpki_llc_defense"] = pt.mpki_llc_defense;
    j["points"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string overhead_chart_svg(const OverheadReport& rep) {
  double vmax = 0;
  for (const LevelOverhead& lv : rep.levels)
    vmax = std::max({vmax, lv.mpki_baseline, lv.mpki_defense});
  if (vmax == 0) vmax = 1;

  std::ostringstream s;
  s << svg_open("MPKI by level — " + rep.workload + " (overhead ratio " +
                fixed(rep.overhead_ratio, 3) + ")");
  svg_axes(s);
  svg_ylabel(s, vmax, "MPKI");

  double span = double(kW - kLeft - kRight) / double(rep.levels.size());
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    const LevelOverhead& lv = rep.levels[i];
    double x0 = kLeft + span * double(i);
    double bw = span / 3.0;
    double yb = plot_y(lv.mpki_baseline, vmax), yd = plot_y(lv.mpki_defense, vmax);
    s << "<rect x=\"" << fixed(x0 + bw * 0.4, 1) << "\" y=\"" << fixed(yb, 1) << "\" width=\""
      << fixed(bw, 1) << "\" height=\"" << fixed(kH - kBottom - yb, 1)
      << "\" fill=\"#7a9cc6\"/>\n";
    s << "<rect x=\"" << fixed(x0 + bw * 1.6, 1) << "\" y=\"" << fixed(yd, 1) << "\" width=\""
      << fixed(bw, 1) << "\" height=\"" << fixed(kH - kBottom - yd, 1)
      << "\" fill=\"#c67a7a\"/>\n";
    s << "<text x=\"" << fixed(x0 + span / 2, 1) << "\" y=\"" << kH - kBottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << lv.name
      << "</text>\n";
  }
  s << "<rect x=\"" << kW - 180 << "\" y=\"30\" width=\"10\" height=\"10\" fill=\"#7a9cc6\"/>"
    << "<text x=\"" << kW - 166
    << "\" y=\"39\" font-family=\"sans-serif\" font-size=\"10\">baseline</text>\n"
    << "<rect x=\"" << kW - 100 << "\" y=\"30\" width=\"10\" height=\"10\" fill=\"#c67a7a\"/>"
    << "<text x=\"" << kW - 86
    << "\" y=\"39\" font-family=\"sans-serif\" font-size=\"10\">defense</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string sweep_chart_svg(const SweepResult& sweep) {
  double rmax = 1.0;
  for (const SweepPoint& pt : sweep.points) rmax = std::max(rmax, pt.overhead_ratio);

  std::ostringstream s;
  s << svg_open("LLC size sweep — " + sweep.workload);
  svg_axes(s);
  svg_ylabel(s, rmax, "overhead ratio");

  double span = double(kW - kLeft - kRight) / double(sweep.points.size());
  std::ostringstream poly;
  for (size_t i = 0; i < sweep.points.size(); ++i) {
    const SweepPoint& pt = sweep.points[i];
    double xc = kLeft + span * (double(i) + 0.5);
    double y = plot_y(pt.overhead_ratio, rmax);
    s << "<rect x=\"" << fixed(xc - span * 0.25, 1) << "\" y=\"" << fixed(y, 1) << "\" width=\""
      << fixed(span * 0.5, 1) << "\" height=\"" << fixed(kH - kBottom - y, 1)
      << "\" fill=\"#7a9cc6\"/>\n";
    // first-access share of defense misses, on a 0..1 scale over the same plot
    double yr = plot_y(pt.first_access_miss_ratio * rmax, rmax);
    poly << fixed(xc, 1) << ',' << fixed(yr, 1) << ' ';
    s << "<text x=\"" << fixed(xc, 1) << "\" y=\"" << kH - kBottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << format_size(pt.llc_bytes) << "</text>\n";
  }
  s << "<polyline points=\"" << poly.str()
    << "\" fill=\"none\" stroke=\"#c67a7a\" stroke-width=\"2\"/>\n";
  s << "<text x=\"" << kW - kRight << "\" y=\"" << kH - 8
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">line: first-access "
       "share of defense misses at the LLC (0..1)</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string probe_chart_svg(const LeakageReport& rep) {
  double vmax = double(rep.hit_threshold) * 2.0;
  for (const ProbeSample& p : rep.decision_probes) vmax = std::max(vmax, double(p.latency));

  std::ostringstream s;
  s << svg_open("Probe latencies — " + rep.scenario + (rep.defense ? " (defense)" : " (baseline)") +
                ", accuracy " + fixed(rep.accuracy, 3));
  svg_axes(s);
  svg_ylabel(s, vmax, "cycles");

  double span = double(kW - kLeft - kRight) / double(std::max<size_t>(rep.decision_probes.size(), 1));
  for (size_t i = 0; i < rep.decision_probes.size(); ++i) {
    double y = plot_y(double(rep.decision_probes[i].latency), vmax);
    const char* color = rep.inferred_bits[i] ? "#c67a7a" : "#7a9cc6";
    s << "<rect x=\"" << fixed(kLeft + span * double(i) + span * 0.15, 1) << "\" y=\""
      << fixed(y, 1) << "\" width=\"" << fixed(std::max(span * 0.7, 0.5), 1) << "\" height=\""
      << fixed(kH - kBottom - y, 1) << "\" fill=\"" << color << "\"/>\n";
  }
  double yt = plot_y(double(rep.hit_threshold), vmax);
  s << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(yt, 1) << "\" x2=\"" << kW - kRight
    << "\" y2=\"" << fixed(yt, 1) << "\" stroke=\"#444444\" stroke-dasharray=\"4 3\"/>\n"
    << "<text x=\"" << kW - kRight << "\" y=\"" << fixed(yt - 4, 1)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">threshold "
    << rep.hit_threshold << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace tcsim
