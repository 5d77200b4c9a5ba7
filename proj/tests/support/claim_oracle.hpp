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
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tcsim/hierarchy.hpp"

namespace tcsim::testing {

// Last-toucher oracle for the defense's grant decisions, tracked per
// process (not per hardware context, which is what the machine itself
// uses — the translation between the two is exactly what the save /
// restore / compare machinery must get right).
//
// A line-residency interval at one level starts at its fill and ends at
// its eviction or flush. Within one residency, a process earns the right
// to hit by being the filler, or by paying one first-access miss. The
// oracle listens to the simulator's event tap and checks every
// classification against those rights:
//
//   - Hit      => the process holds the right (else: wrongly-granted hit,
//                 the security violation)
//   - FirstAccessMiss, strict mode => the process holds no right yet and
//                 has not already paid in this residency (at most one
//                 first-access miss per (process, level, residency))
//   - Miss     => the oracle agrees no residency is live at that level
//
// Strict mode is for runs whose clock never wraps. With a deliberately
// tiny timestamp width the machine is allowed to cut rights short (extra
// first-access misses are the safe direction), so wrap runs check only
// the Hit rule; it must hold regardless of wraparound.
class ClaimOracle : public SimObserver {
 public:
  ClaimOracle(uint32_t line_bytes, bool strict) : line_bytes_(line_bytes), strict_(strict) {}

  void on_access(Pid pid, CtxId ctx, Addr addr, AccessKind kind,
                 const AccessOutcome& out) override {
    (void)ctx;
    (void)kind;
    cur_pid_ = pid;
    const Addr line = addr & ~Addr(line_bytes_ - 1);
    ++accesses_;

    for (int id = 0; id < int(out.num_caches); ++id) {
      Residency* r = find(id, line);
      switch (out.levels[id]) {
        case LevelClass::Absent:
          break;
        case LevelClass::Hit:
          ++hits_checked_;
          if (!r || !r->live)
            fail("hit at level " + std::to_string(id) + " on " + hex(line) +
                 " which the oracle holds as not resident (pid " + std::to_string(pid) + ")");
          else if (!r->rights.count(pid))
            fail("wrongly-granted hit: pid " + std::to_string(pid) + " at level " +
                 std::to_string(id) + " on " + hex(line) +
                 " without fill or paid first access in this residency");
          break;
        case LevelClass::FirstAccessMiss:
          ++fa_checked_;
          if (!r || !r->live) {
            fail("first-access miss at level " + std::to_string(id) + " on " + hex(line) +
                 " which the oracle holds as not resident");
            break;
          }
          if (strict_ && r->fa_paid.count(pid))
            fail("second first-access miss in one residency: pid " + std::to_string(pid) +
                 " level " + std::to_string(id) + " line " + hex(line));
          if (strict_ && r->rights.count(pid))
            fail("first-access miss despite an existing right: pid " + std::to_string(pid) +
                 " level " + std::to_string(id) + " line " + hex(line));
          r->fa_paid.insert(pid);
          r->rights.insert(pid);
          break;
        case LevelClass::Miss:
          if (r && r->live)
            fail("miss at level " + std::to_string(id) + " on " + hex(line) +
                 " which the oracle holds as resident");
          break;
      }
    }
  }

  void on_fill(int cache_id, Addr line_addr, uint64_t) override {
    Residency& r = state_[key(cache_id, line_addr)];
    r.live = true;
    r.rights.clear();
    r.fa_paid.clear();
    r.rights.insert(cur_pid_);  // the filler paid the ordinary miss
  }

  void on_evict(int cache_id, Addr line_addr) override {
    auto it = state_.find(key(cache_id, line_addr));
    if (it == state_.end() || !it->second.live) {
      fail("eviction of " + hex(line_addr) + " at level " + std::to_string(cache_id) +
           " which the oracle holds as not resident");
      return;
    }
    it->second.live = false;
    it->second.rights.clear();
    it->second.fa_paid.clear();
  }

  const std::vector<std::string>& violations() const { return violations_; }
  uint64_t accesses_checked() const { return accesses_; }
  uint64_t hits_checked() const { return hits_checked_; }
  uint64_t first_access_checked() const { return fa_checked_; }

 private:
  struct Residency {
    bool live = false;
    std::set<Pid> rights;
    std::set<Pid> fa_paid;
  };

  static std::pair<int, Addr> key(int cache_id, Addr line) { return {cache_id, line}; }

  Residency* find(int cache_id, Addr line) {
    auto it = state_.find(key(cache_id, line));
    return it == state_.end() ? nullptr : &it->second;
  }

  static std::string hex(Addr a) {
    std::ostringstream os;
    os << "0x" << std::hex << a;
    return os.str();
  }

  void fail(const std::string& msg) {
    if (violations_.size() < 32) violations_.push_back(msg);
    else if (violations_.size() == 32) violations_.push_back("... further violations suppressed");
  }

  uint32_t line_bytes_;
  bool strict_;
  Pid cur_pid_ = 0;
  uint64_t accesses_ = 0;
  uint64_t hits_checked_ = 0;
  uint64_t fa_checked_ = 0;
  std::map<std::pair<int, Addr>, Residency> state_;
  std::vector<std::string> violations_;
};

}  // namespace tcsim::testing
