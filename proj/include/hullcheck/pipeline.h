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


#ifndef HULLCHECK_PIPELINE_H_
#define HULLCHECK_PIPELINE_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hullcheck/checklang/ast.h"
#include "hullcheck/checklang/interpreter.h"
#include "hullcheck/depgraph.h"
#include "hullcheck/exact.h"
#include "hullcheck/kb.h"
#include "hullcheck/ledger.h"
#include "hullcheck/trace.h"
#include "json.hpp"

namespace hullcheck::pipeline {

// A parsed program with its dependency graphs and trip-counter
// instrumentation.
struct Analysis {
  checklang::Program program;
  checklang::Program instrumented;
  std::map<std::string, depgraph::DependencyGraph> graphs;
};

Analysis Analyze(checklang::Program program);
Analysis AnalyzeSource(const std::string& source);

// A run that did not complete normally.
struct RunFailure {
  size_t input = 0;
  checklang::RunStatus status = checklang::RunStatus::kOk;
  std::string message;
};

struct ProfileResult {
  size_t runs = 0;
  CheckLedger ledger;
  std::vector<RunFailure> failures;
  std::vector<checklang::RawScopeRecord> raw;
  // Graphs after profile refinement and the affecting sets derived from them.
  std::map<std::string, depgraph::DependencyGraph> graphs;
  std::vector<depgraph::AffectingSet> sets;
  std::vector<trace::TraceRecord> traces;
};

// Full-check runs of the instrumented program, `threads` inputs at a time.
// Results are in input order regardless of `threads`.
ProfileResult Profile(const Analysis& analysis,
                      const std::vector<nlohmann::json>& inputs,
                      unsigned threads = 1);

// Knowledge base of `kind` built from `traces` on top of `base`.
kb::KnowledgeBase BuildKb(const std::vector<trace::TraceRecord>& traces,
                          RegionKind kind, const kb::KnowledgeBase* base = nullptr,
                          kb::MergeReport* report = nullptr);

struct RunReport {
  size_t runs = 0;
  CheckLedger ledger;
  std::vector<RunFailure> failures;
  std::vector<std::string> outputs;  // per input
  std::vector<std::string> memory;   // per input, empty unless completed
  // Functions guarded by the knowledge base, i.e. carrying a second,
  // check-free body.
  size_t dual_functions = 0;

  // Bypassed over total checks; zero when there were no checks.
  Rational BypassRatio() const;
  Rational BypassRatio(const std::string& func) const;
  std::string ToText() const;
  nlohmann::json ToJson() const;
};

struct ChopOptions {
  unsigned threads = 1;
  bool verify_bypassed = true;
  std::set<std::string> functions;  // guarded functions; empty means all
};

RunReport RunChop(const Analysis& analysis, const kb::KnowledgeBase& kb,
                  const std::vector<nlohmann::json>& inputs,
                  const ChopOptions& options = {});

// Full-check runs of the uninstrumented program for reference outputs.
RunReport RunFullCheck(const Analysis& analysis,
                       const std::vector<nlohmann::json>& inputs,
                       unsigned threads = 1);

// Per-function table of bypassed checks under union and hull regions.
std::string ComparisonTable(const RunReport& union_report,
                            const RunReport& hull_report);

// Percentage text with two decimals.
std::string Percent(const Rational& ratio);

}  // namespace hullcheck::pipeline

#endif  // HULLCHECK_PIPELINE_H_
