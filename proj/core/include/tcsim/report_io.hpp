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

#include "tcsim/harness.hpp"
#include "tcsim/simulator.hpp"

namespace tcsim {

// Every CSV document opens with a `# <tag>` line naming its schema version;
// scalar context rides in further `#` comment lines above the header row.
// All output below is byte-deterministic for identical inputs (doubles are
// printed with fixed precision). See docs/output-formats.md.
inline constexpr const char* kStatsCsvTag = "tcsim-stats-v1";
inline constexpr const char* kLeakageCsvTag = "tcsim-leakage-v1";
inline constexpr const char* kOverheadCsvTag = "tcsim-overhead-v1";
inline constexpr const char* kSweepCsvTag = "tcsim-sweep-v1";

std::string stats_to_csv(const SimulationResult& res);
std::string leakage_to_csv(const LeakageReport& rep);
std::string overhead_to_csv(const OverheadReport& rep);
std::string sweep_to_csv(const SweepResult& sweep);

std::string stats_to_json(const SimulationResult& res);
std::string leakage_to_json(const LeakageReport& rep);
std::string overhead_to_json(const OverheadReport& rep);
std::string sweep_to_json(const SweepResult& sweep);

// Self-contained charts (no external assets), likewise deterministic.
std::string overhead_chart_svg(const OverheadReport& rep);
std::string sweep_chart_svg(const SweepResult& sweep);
std::string probe_chart_svg(const LeakageReport& rep);

// throws IoError
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tcsim
