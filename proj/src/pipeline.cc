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


#include "hullcheck/pipeline.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "hullcheck/checklang/parser.h"
#include "hullcheck/error.h"

namespace hullcheck::pipeline {

using checklang::RunOptions;
using checklang::RunResult;
using checklang::RunStatus;
using nlohmann::json;

Analysis Analyze(checklang::Program program) {
  Analysis a;
  a.graphs = depgraph::BuildAll(program);
  a.instrumented = depgraph::InstrumentTripCounts(program, a.graphs);
  a.program = std::move(program);
  return a;
}

Analysis AnalyzeSource(const std::string& source) {
  return Analyze(checklang::Parse(source));
}

namespace {

// Runs `fn(i)` for every input index on up to `threads` workers.
void ForEachInput(size_t count, unsigned threads,
                  const std::function<void(size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::vector<RunResult> RunAll(const checklang::Program& program,
                              const std::vector<json>& inputs,
                              const RunOptions& options, unsigned threads) {
  std::vector<RunResult> results(inputs.size());
  ForEachInput(inputs.size(), threads, [&](size_t i) {
    results[i] = checklang::Run(program, inputs[i], options);
  });
  return results;
}

void Collect(std::vector<RunResult>& results, RunReport* report) {
  report->runs = results.size();
  for (size_t i = 0; i < results.size(); ++i) {
    RunResult& r = results[i];
    report->ledger.Merge(r.ledger);
    if (!r.ok()) report->failures.push_back({i, r.status, r.error});
    report->outputs.push_back(std::move(r.output));
    report->memory.push_back(std::move(r.memory));
  }
}

}  // namespace

ProfileResult Profile(const Analysis& analysis, const std::vector<json>& inputs,
                      unsigned threads) {
  RunOptions opt;
  opt.collect_traces = true;
  std::vector<RunResult> results = RunAll(analysis.instrumented, inputs, opt, threads);
  ProfileResult out;
  out.runs = results.size();
  for (size_t i = 0; i < results.size(); ++i) {
    RunResult& r = results[i];
    out.ledger.Merge(r.ledger);
    if (!r.ok()) out.failures.push_back({i, r.status, r.error});
    for (auto& rec : r.records) out.raw.push_back(std::move(rec));
  }
  for (const auto& [name, dg] : analysis.graphs) {
    out.graphs.emplace(name, depgraph::RefineWithProfile(dg, out.raw));
  }
  for (const auto& [name, dg] : out.graphs) {
    for (depgraph::AffectingSet& s : depgraph::AllAffectingSets(dg)) {
      out.sets.push_back(std::move(s));
    }
  }
  out.traces = trace::MakeTraceRecords(out.raw, out.sets, &out.graphs);
  return out;
}

kb::KnowledgeBase BuildKb(const std::vector<trace::TraceRecord>& traces,
                          RegionKind kind, const kb::KnowledgeBase* base,
                          kb::MergeReport* report) {
  if (base != nullptr && base->kind() != kind) {
    throw UsageError(std::string("knowledge base holds ") + RegionKindName(base->kind()) +
                     " regions, not " + RegionKindName(kind));
  }
  return kb::Merge(base != nullptr ? *base : kb::KnowledgeBase(kind), traces, report);
}

RunReport RunChop(const Analysis& analysis, const kb::KnowledgeBase& kb,
                  const std::vector<json>& inputs, const ChopOptions& options) {
  kb::KbOracle oracle(kb, options.functions);
  RunOptions opt;
  opt.mode = checklang::Mode::kChop;
  opt.oracle = &oracle;
  opt.verify_bypassed = options.verify_bypassed;
  std::vector<RunResult> results =
      RunAll(analysis.instrumented, inputs, opt, options.threads);
  RunReport report;
  Collect(results, &report);
  std::set<std::string> guarded;
  for (const auto& [key, e] : kb.entries()) {
    if (options.functions.empty() || options.functions.count(key.func) != 0) {
      if (analysis.program.Find(key.func) != nullptr) guarded.insert(key.func);
    }
  }
  report.dual_functions = guarded.size();
  return report;
}

RunReport RunFullCheck(const Analysis& analysis, const std::vector<json>& inputs,
                       unsigned threads) {
  std::vector<RunResult> results = RunAll(analysis.program, inputs, {}, threads);
  RunReport report;
  Collect(results, &report);
  return report;
}

namespace {

Rational Ratio(const FunctionLedger& f) {
  uint64_t total = f.total_checks();
  return total == 0 ? Rational(0) : Rational(f.checks_bypassed) / Rational(total);
}

}  // namespace

std::string Percent(const Rational& ratio) { return FormatDecimal(ratio * 100, 2) + "%"; }

Rational RunReport::BypassRatio() const { return Ratio(ledger.Total()); }

Rational RunReport::BypassRatio(const std::string& func) const {
  auto it = ledger.functions().find(func);
  return it == ledger.functions().end() ? Rational(0) : Ratio(it->second);
}

std::string RunReport::ToText() const {
  std::ostringstream out;
  FunctionLedger total = ledger.Total();
  out << "runs " << runs << ", failed " << failures.size() << '\n';
  out << "total checks " << total.total_checks() << ", performed "
      << total.checks_performed << ", bypassed " << total.checks_bypassed << " ("
      << Percent(BypassRatio()) << "), false positives " << total.false_positives
      << '\n';
  out << "conservation: performed + bypassed = " << total.total_checks() << '\n';
  out << "functions with a check-free body: " << dual_functions << '\n';
  out << std::left << std::setw(24) << "function" << std::right << std::setw(14)
      << "checks" << std::setw(14) << "bypassed" << std::setw(10) << "ratio"
      << std::setw(8) << "fp" << '\n';
  for (const auto& [func, f] : ledger.functions()) {
    out << std::left << std::setw(24) << func << std::right << std::setw(14)
        << f.total_checks() << std::setw(14) << f.checks_bypassed << std::setw(10)
        << Percent(Ratio(f)) << std::setw(8) << f.false_positives << '\n';
  }
  for (const RunFailure& fl : failures) {
    out << "input " << fl.input << ": " << checklang::RunStatusName(fl.status) << ": "
        << fl.message << '\n';
  }
  return out.str();
}

json RunReport::ToJson() const {
  FunctionLedger total = ledger.Total();
  json j;
  j["runs"] = runs;
  j["total_checks"] = total.total_checks();
  j["checks_performed"] = total.checks_performed;
  j["checks_bypassed"] = total.checks_bypassed;
  j["bypass_ratio"] = FormatRational(BypassRatio());
  j["false_positives"] = total.false_positives;
  j["dual_functions"] = dual_functions;
  j["ledger"] = ledger.ToJson();
  j["failures"] = json::array();
  for (const RunFailure& f : failures) {
    j["failures"].push_back({{"input", f.input},
                             {"status", checklang::RunStatusName(f.status)},
                             {"message", f.message}});
  }
  return j;
}

std::string ComparisonTable(const RunReport& union_report, const RunReport& hull_report) {
  std::set<std::string> funcs;
  for (const auto& [f, l] : union_report.ledger.functions()) funcs.insert(f);
  for (const auto& [f, l] : hull_report.ledger.functions()) funcs.insert(f);
  std::ostringstream out;
  out << std::left << std::setw(24) << "function" << std::right << std::setw(14)
      << "checks" << std::setw(22) << "union bypassed" << std::setw(22)
      << "hull bypassed" << std::setw(18) << "false positives" << '\n';
  auto cell = [](const CheckLedger& l, const std::string& f) {
    auto it = l.functions().find(f);
    FunctionLedger x = it == l.functions().end() ? FunctionLedger{} : it->second;
    return std::to_string(x.checks_bypassed) + " (" + Percent(Ratio(x)) + ")";
  };
  for (const std::string& f : funcs) {
    auto u = union_report.ledger.functions().find(f);
    auto h = hull_report.ledger.functions().find(f);
    uint64_t checks = h != hull_report.ledger.functions().end()
                          ? h->second.total_checks()
                          : u->second.total_checks();
    uint64_t fp = 0;
    if (u != union_report.ledger.functions().end()) fp += u->second.false_positives;
    if (h != hull_report.ledger.functions().end()) fp += h->second.false_positives;
    out << std::left << std::setw(24) << f << std::right << std::setw(14) << checks
        << std::setw(22) << cell(union_report.ledger, f) << std::setw(22)
        << cell(hull_report.ledger, f) << std::setw(18) << fp << '\n';
  }
  return out.str();
}

}  // namespace hullcheck::pipeline
