/*
 * Copyright (C) 2026 The hullcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "hullcheck/profiler.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "hullcheck/error.h"

namespace hullcheck::profiler {

std::vector<FunctionCost> SyntheticCosts(const CheckLedger& ledger,
                                         const CostModel& model) {
  if (model.per_check < 0 || model.per_stmt < 0) {
    throw UsageError("cost constants must be nonnegative");
  }
  std::vector<FunctionCost> out;
  for (const auto& [func, f] : ledger.functions()) {
    FunctionCost c;
    c.func = func;
    c.checks = f.checks_performed;
    c.t_plain = model.per_stmt * Rational(f.statements);
    c.t_checked = c.t_plain + model.per_check * Rational(f.checks_performed);
    out.push_back(std::move(c));
  }
  return out;
}

HotspotReport OverheadBreakdown(const std::vector<FunctionCost>& costs,
                                const Rational& threshold) {
  if (threshold < 0 || threshold > 1) {
    throw UsageError("hotspot threshold must lie in [0, 1]");
  }
  HotspotReport report;
  report.threshold = threshold;
  for (const FunctionCost& c : costs) {
    if (c.t_checked < c.t_plain) {
      throw UsageError("function " + c.func + " is faster with checks than without");
    }
    report.total_overhead += c.overhead();
  }
  for (const FunctionCost& c : costs) {
    HotspotEntry e;
    e.func = c.func;
    e.overhead = c.overhead();
    e.checks = c.checks;
    if (report.total_overhead > 0) {
      e.fraction = e.overhead / report.total_overhead;
      e.selected = e.fraction >= threshold;
    }
    report.ranked.push_back(std::move(e));
  }
  if (report.total_overhead == 0) {
    report.note = "no bounds-check overhead; nothing selected";
  }
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const HotspotEntry& a, const HotspotEntry& b) {
                     if (a.fraction != b.fraction) return a.fraction > b.fraction;
                     return a.func < b.func;
                   });
  return report;
}

std::vector<std::string> HotspotReport::Selected() const {
  std::vector<std::string> out;
  for (const HotspotEntry& e : ranked) {
    if (e.selected) out.push_back(e.func);
  }
  return out;
}

std::string HotspotReport::ToText() const {
  std::ostringstream out;
  out << std::left << std::setw(6) << "rank" << std::setw(24) << "function"
      << std::right << std::setw(10) << "O_f" << std::setw(14) << "checks"
      << "  hotspot\n";
  int rank = 1;
  for (const HotspotEntry& e : ranked) {
    out << std::left << std::setw(6) << rank++ << std::setw(24) << e.func
        << std::right << std::setw(9) << FormatDecimal(e.fraction * 100, 2) << '%'
        << std::setw(14) << e.checks << "  " << (e.selected ? "yes" : "no")
        << '\n';
  }
  out << "threshold " << FormatDecimal(threshold * 100, 2) << "%, total overhead "
      << FormatDecimal(total_overhead, 4) << " units\n";
  if (!note.empty()) out << note << '\n';
  return out.str();
}

nlohmann::json HotspotReport::ToJson() const {
  nlohmann::json j;
  j["threshold"] = FormatRational(threshold);
  j["total_overhead"] = FormatRational(total_overhead);
  j["functions"] = nlohmann::json::array();
  for (const HotspotEntry& e : ranked) {
    j["functions"].push_back({{"func", e.func},
                              {"overhead", FormatRational(e.overhead)},
                              {"fraction", FormatRational(e.fraction)},
                              {"checks", e.checks},
                              {"selected", e.selected}});
  }
  j["selected"] = Selected();
  if (!note.empty()) j["note"] = note;
  return j;
}

}  // namespace hullcheck::profiler
