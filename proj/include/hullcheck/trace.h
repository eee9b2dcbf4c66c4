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


#ifndef HULLCHECK_TRACE_H_
#define HULLCHECK_TRACE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hullcheck/checklang/interpreter.h"
#include "hullcheck/depgraph.h"
#include "json.hpp"

namespace hullcheck::trace {

// One observation of a region-guarded (function, scope, target) from a
// full-check activation, reduced to the target's pointer-affecting
// variables.
struct TraceRecord {
  std::string func;
  std::string scope;  // "function" or "loop:<id>"
  std::string target;
  std::vector<std::string> signature;  // "name:+" / "name:-"
  std::map<std::string, int64_t> vars;
  std::map<std::string, int64_t> trip_counts;
  std::vector<int64_t> index_terms;
  uint64_t accesses = 0;
  bool all_checks_passed = true;
  bool complete = true;
  bool resized = false;
  // The trip counts agree with every profile fit used by the signature.
  bool fit_holds = true;

  // Whether the record may enlarge a safe region.
  bool Mergeable() const {
    return all_checks_passed && complete && !resized && fit_holds && accesses > 0;
  }

  nlohmann::json ToJson() const;
  // Throws FormatError.
  static TraceRecord FromJson(const nlohmann::json& j);

  bool operator==(const TraceRecord& other) const = default;
};

// Records for the raw observations whose (func, scope, target) has an
// eligible affecting set. With `graphs`, records that contradict a profile
// fit are flagged.
std::vector<TraceRecord> MakeTraceRecords(
    const std::vector<checklang::RawScopeRecord>& raw,
    const std::vector<depgraph::AffectingSet>& sets,
    const std::map<std::string, depgraph::DependencyGraph>* graphs = nullptr);

// One JSON object per line.
std::string FormatTrace(const std::vector<TraceRecord>& records);
// Throws FormatError naming the offending line.
std::vector<TraceRecord> ParseTrace(const std::string& text);

std::vector<TraceRecord> ReadTraceFile(const std::string& path);
void WriteTraceFile(const std::string& path,
                    const std::vector<TraceRecord>& records);

// Reads a whole file; throws FormatError when it cannot be opened.
std::string ReadFile(const std::string& path);
// Writes to a temporary sibling and renames it over `path`.
void WriteFileAtomic(const std::string& path, const std::string& contents);

}  // namespace hullcheck::trace

#endif  // HULLCHECK_TRACE_H_
