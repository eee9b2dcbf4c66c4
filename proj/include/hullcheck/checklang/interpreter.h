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

#ifndef HULLCHECK_CHECKLANG_INTERPRETER_H_
#define HULLCHECK_CHECKLANG_INTERPRETER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hullcheck/checklang/ast.h"
#include "hullcheck/ledger.h"
#include "json.hpp"

namespace hullcheck::checklang {

enum class Mode { kFullCheck, kChop };

// A region-guarded target in one scope and the raw names its query needs.
// Names are int variables or "len(a)" for the current length of array a.
struct ScopeTarget {
  std::string target;
  std::vector<std::string> vars;
};

// Source of bypass verdicts for chop-mode runs. Implementations must be
// safe to share read-only between interpreters.
class BypassOracle {
 public:
  virtual ~BypassOracle() = default;
  // `scope` is "function" or "loop:<id>".
  virtual std::vector<ScopeTarget> Targets(const std::string& func,
                                           const std::string& scope) const = 0;
  virtual bool IsSafe(const std::string& func, const std::string& scope,
                      const std::string& target,
                      const std::map<std::string, int64_t>& raw) const = 0;
};

// Per (activation, scope, target) observations from a full-check run.
struct RawScopeRecord {
  std::string func;
  std::string scope;
  std::string target;
  std::map<std::string, int64_t> candidates;   // values at scope entry
  std::map<std::string, int64_t> trip_counts;  // deltas over the scope
  uint64_t accesses = 0;
  bool all_checks_passed = true;
  // False when a loop in the scope ran zero times or was left through break
  // or return.
  bool complete = true;
  // True when the target's length changed inside the scope.
  bool resized = false;
  // Additive terms of the access index with the largest partial sum.
  std::vector<int64_t> index_terms;
};

struct RunOptions {
  Mode mode = Mode::kFullCheck;
  const BypassOracle* oracle = nullptr;
  bool verify_bypassed = true;
  bool collect_traces = false;
  uint64_t max_steps = 200000000;
  int max_depth = 2000;
};

enum class RunStatus { kOk, kBoundsViolation, kFalsePositive, kRuntimeError };

const char* RunStatusName(RunStatus status);

struct BoundsReport {
  int site = -1;
  std::string func;
  std::string array;
  int line = 0;
  int64_t index = 0;
  int64_t length = 0;

  std::string ToString() const;
};

struct RunResult {
  RunStatus status = RunStatus::kOk;
  std::string output;   // printed text
  std::string memory;   // final heap and main scalars (kOk only)
  std::optional<BoundsReport> violation;
  std::string error;
  CheckLedger ledger;
  std::vector<RawScopeRecord> records;

  bool ok() const { return status == RunStatus::kOk; }
};

// Executes main() with `inputs` (a JSON object mapping input names to
// integers, integer arrays, or strings). Program errors are reported in the
// result; UsageError is thrown for a missing main or non-object inputs.
RunResult Run(const Program& program, const nlohmann::json& inputs,
              const RunOptions& options);

}  // namespace hullcheck::checklang

#endif  // HULLCHECK_CHECKLANG_INTERPRETER_H_
