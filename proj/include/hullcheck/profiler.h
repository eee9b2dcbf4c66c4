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


#ifndef HULLCHECK_PROFILER_H_
#define HULLCHECK_PROFILER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hullcheck/exact.h"
#include "hullcheck/ledger.h"
#include "json.hpp"

namespace hullcheck::profiler {

struct FunctionCost {
  std::string func;
  Rational t_plain;
  Rational t_checked;
  uint64_t checks = 0;

  Rational overhead() const { return t_checked - t_plain; }
};

// Cost units per executed statement and per performed bounds check. The
// default ratio follows the measured 0.035 s per check against 0.0019 s per
// statement-level guard.
struct CostModel {
  Rational per_check{35, 1000};
  Rational per_stmt{19, 10000};
};

// Throws UsageError on negative costs.
std::vector<FunctionCost> SyntheticCosts(const CheckLedger& ledger,
                                         const CostModel& model = {});

struct HotspotEntry {
  std::string func;
  Rational overhead;
  Rational fraction;  // O_f
  uint64_t checks = 0;
  bool selected = false;
};

struct HotspotReport {
  Rational threshold{1, 20};
  Rational total_overhead;
  std::vector<HotspotEntry> ranked;  // descending O_f, then name
  std::string note;

  std::vector<std::string> Selected() const;
  std::string ToText() const;
  nlohmann::json ToJson() const;
};

// O_f = (t_checked_f - t_plain_f) / (T_checked - T_plain). Throws UsageError
// when a function has t_checked < t_plain or the threshold is outside [0, 1].
HotspotReport OverheadBreakdown(const std::vector<FunctionCost>& costs,
                                const Rational& threshold = Rational(1, 20));

}  // namespace hullcheck::profiler

#endif  // HULLCHECK_PROFILER_H_
