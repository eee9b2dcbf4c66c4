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

#include "cli.h"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "hullcheck/corpus.h"
#include "hullcheck/error.h"
#include "hullcheck/kb.h"
#include "hullcheck/pipeline.h"
#include "hullcheck/profiler.h"
#include "hullcheck/trace.h"

namespace hullcheck::cli {
namespace {

using nlohmann::json;

struct Context {
  std::ostream& out;
  std::ostream& err;
};

pipeline::Analysis LoadProgram(const std::string& path) {
  std::string source = trace::ReadFile(path);
  try {
    return pipeline::AnalyzeSource(source);
  } catch (const SyntaxError& e) {
    throw FormatError(path + ":" + e.what());
  }
}

std::vector<json> LoadAllInputs(const std::vector<std::string>& paths) {
  std::vector<json> inputs;
  for (const std::string& p : paths) {
    std::vector<json> more = ReadInputs(p);
    inputs.insert(inputs.end(), more.begin(), more.end());
  }
  return inputs;
}

void WriteJson(const std::string& path, const json& j) {
  trace::WriteFileAtomic(path, j.dump(2) + "\n");
}

int ReportFailures(const Context& ctx, const std::string& program,
                   const std::vector<pipeline::RunFailure>& failures) {
  bool violation = false;
  for (const pipeline::RunFailure& f : failures) {
    ctx.err << program << ": input " << f.input << ": "
            << checklang::RunStatusName(f.status) << ": " << f.message << '\n';
    violation = violation || f.status != checklang::RunStatus::kOk;
  }
  return violation ? static_cast<int>(ExitCode::kBoundsViolation) : 0;
}

struct ProfileArgs {
  std::string program;
  std::vector<std::string> inputs;
  std::string trace_out;
  std::string ledger_out;
  unsigned threads = 1;
};

int CmdProfile(const Context& ctx, const ProfileArgs& a) {
  pipeline::Analysis analysis = LoadProgram(a.program);
  std::vector<json> inputs = LoadAllInputs(a.inputs);
  if (inputs.empty()) throw UsageError("no inputs");
  pipeline::ProfileResult r = pipeline::Profile(analysis, inputs, a.threads);
  if (!a.trace_out.empty()) trace::WriteTraceFile(a.trace_out, r.traces);
  if (!a.ledger_out.empty()) WriteJson(a.ledger_out, r.ledger.ToJson());
  FunctionLedger total = r.ledger.Total();
  ctx.out << "runs " << r.runs << ", violations " << r.failures.size()
          << ", checks " << total.checks_performed << ", trace records "
          << r.traces.size() << '\n';
  for (const depgraph::AffectingSet& s : r.sets) {
    ctx.out << (s.eligible ? "eligible   " : "ineligible ") << s.ToString();
    if (!s.eligible && !s.reasons.empty()) ctx.out << "  # " << s.reasons.front();
    ctx.out << '\n';
  }
  return ReportFailures(ctx, a.program, r.failures);
}

struct HotspotArgs {
  std::string file;
  std::string threshold = "0.05";
  std::string per_check;
  std::string per_stmt;
  bool json = false;
};

// A ledger written by `profile`, or {"functions": [{"func", "t_plain",
// "t_checked"}]} with measured times as decimal strings.
std::vector<profiler::FunctionCost> LoadCosts(const HotspotArgs& a) {
  json j;
  try {
    j = json::parse(trace::ReadFile(a.file));
  } catch (const json::exception& e) {
    throw FormatError(a.file + ": " + e.what());
  }
  if (j.is_object() && j.contains("functions") && j["functions"].is_array()) {
    std::vector<profiler::FunctionCost> costs;
    for (const json& f : j["functions"]) {
      if (!f.is_object() || !f.contains("func") || !f.contains("t_plain") ||
          !f.contains("t_checked")) {
        throw FormatError(a.file + ": cost entries need func, t_plain, t_checked");
      }
      auto number = [&](const char* key) {
        const json& v = f[key];
        return v.is_string() ? ParseDecimal(v.get<std::string>())
                             : ParseDecimal(v.dump());
      };
      profiler::FunctionCost c;
      c.func = f["func"].get<std::string>();
      c.t_plain = number("t_plain");
      c.t_checked = number("t_checked");
      c.checks = f.value("checks", uint64_t{0});
      costs.push_back(c);
    }
    return costs;
  }
  profiler::CostModel model;
  if (!a.per_check.empty()) model.per_check = ParseDecimal(a.per_check);
  if (!a.per_stmt.empty()) model.per_stmt = ParseDecimal(a.per_stmt);
  return profiler::SyntheticCosts(CheckLedger::FromJson(j), model);
}

int CmdHotspots(const Context& ctx, const HotspotArgs& a) {
  profiler::HotspotReport r =
      profiler::OverheadBreakdown(LoadCosts(a), ParseDecimal(a.threshold));
  if (a.json) {
    ctx.out << r.ToJson().dump(2) << '\n';
  } else {
    ctx.out << r.ToText();
  }
  return 0;
}

struct BuildArgs {
  std::vector<std::string> traces;
  std::string kind = "hull";
  std::string kb;
  uint64_t c_max = kCMax;
};

int CmdBuild(const Context& ctx, const BuildArgs& a) {
  RegionKind kind = ParseRegionKind(a.kind);
  std::vector<trace::TraceRecord> records;
  for (const std::string& p : a.traces) {
    std::vector<trace::TraceRecord> more = trace::ReadTraceFile(p);
    records.insert(records.end(), more.begin(), more.end());
  }
  kb::KnowledgeBase base(kind, a.c_max);
  if (std::filesystem::exists(a.kb)) {
    base = kb::Load(a.kb);
    if (base.kind() != kind) {
      throw UsageError(a.kb + " holds " + RegionKindName(base.kind()) +
                       " regions, not " + a.kind);
    }
  }
  kb::MergeReport report;
  kb::KnowledgeBase merged = pipeline::BuildKb(records, kind, &base, &report);
  kb::Store(merged, a.kb);
  for (const std::string& w : report.warnings) ctx.err << "warning: " << w << '\n';
  ctx.out << "entries " << merged.entries().size() << ", merged " << report.merged
          << ", gated " << report.gated << ", overflow " << report.overflow
          << ", invalid " << report.invalid << ", resets " << report.resets << '\n';
  return 0;
}

struct RunArgs {
  std::string program;
  std::vector<std::string> inputs;
  std::vector<std::string> kbs;
  std::string report_out;
  std::vector<std::string> functions;
  unsigned threads = 1;
  bool no_verify = false;
};

int CmdRun(const Context& ctx, const RunArgs& a) {
  if (a.kbs.empty() || a.kbs.size() > 2) throw UsageError("give one or two --kb files");
  pipeline::Analysis analysis = LoadProgram(a.program);
  std::vector<json> inputs = LoadAllInputs(a.inputs);
  if (inputs.empty()) throw UsageError("no inputs");
  pipeline::ChopOptions options;
  options.threads = a.threads;
  options.verify_bypassed = !a.no_verify;
  options.functions.insert(a.functions.begin(), a.functions.end());

  std::vector<kb::KnowledgeBase> kbs;
  for (const std::string& p : a.kbs) kbs.push_back(kb::Load(p));
  if (kbs.size() == 2 && kbs[0].kind() == kbs[1].kind()) {
    throw UsageError("the two --kb files must hold union and hull regions");
  }
  std::vector<pipeline::RunReport> reports;
  json report_json = json::object();
  int code = 0;
  for (size_t i = 0; i < kbs.size(); ++i) {
    pipeline::RunReport r = pipeline::RunChop(analysis, kbs[i], inputs, options);
    std::string kind = RegionKindName(kbs[i].kind());
    if (kbs.size() == 2) ctx.out << "== " << kind << " ==\n";
    ctx.out << r.ToText();
    for (size_t k = 0; k < r.outputs.size(); ++k) {
      if (kbs.size() == 1 && !r.outputs[k].empty()) ctx.out << r.outputs[k];
    }
    report_json[kind] = r.ToJson();
    code = std::max(code, ReportFailures(ctx, a.program, r.failures));
    reports.push_back(std::move(r));
  }
  if (reports.size() == 2) {
    bool union_first = kbs[0].kind() == RegionKind::kUnion;
    const pipeline::RunReport& u = reports[union_first ? 0 : 1];
    const pipeline::RunReport& h = reports[union_first ? 1 : 0];
    ctx.out << pipeline::ComparisonTable(u, h);
  }
  if (!a.report_out.empty()) WriteJson(a.report_out, report_json);
  return code;
}

struct DumpArgs {
  std::string program;
  std::string function;
};

int CmdDumpDg(const Context& ctx, const DumpArgs& a) {
  pipeline::Analysis analysis = LoadProgram(a.program);
  bool found = false;
  for (const auto& [name, dg] : analysis.graphs) {
    if (!a.function.empty() && name != a.function) continue;
    found = true;
    ctx.out << "func " << name << '\n' << dg.Dump();
    for (const auto& [node, reasons] : dg.taints()) {
      for (const std::string& r : reasons) ctx.out << "taint " << node << ": " << r << '\n';
    }
    for (const depgraph::AffectingSet& s : depgraph::AllAffectingSets(dg)) {
      ctx.out << (s.eligible ? "eligible   " : "ineligible ") << s.ToString() << '\n';
    }
  }
  if (!found) throw UsageError("no function '" + a.function + "'");
  return 0;
}

struct GenArgs {
  std::string what = "program";
  uint64_t seed = 0;
  size_t count = 100;
  int64_t max_length = 1000;
};

int CmdGen(const Context& ctx, const GenArgs& a) {
  if (a.what == "program") {
    ctx.out << corpus::RandomProgram(a.seed);
    return 0;
  }
  std::vector<json> inputs;
  if (a.what == "inputs") {
    inputs = corpus::RandomInputs(a.seed, a.count);
  } else if (a.what == "foo") {
    inputs = corpus::FooInputs(a.seed, a.count);
  } else if (a.what == "defang") {
    inputs = corpus::DefangRequests(a.seed, a.count, a.max_length);
  } else if (a.what == "maingtu") {
    inputs = corpus::MainGtUInputs(a.seed, a.count);
  } else if (a.what == "lbm") {
    inputs = corpus::LbmInputs(a.seed, a.count);
  } else {
    throw UsageError("unknown generator '" + a.what + "'");
  }
  for (const json& in : inputs) ctx.out << in.dump() << '\n';
  return 0;
}

}  // namespace

std::vector<json> ReadInputs(const std::string& path) {
  std::string text = trace::ReadFile(path);
  std::vector<json> out;
  bool lines = path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl";
  try {
    if (lines) {
      std::istringstream in(text);
      std::string line;
      for (int n = 1; std::getline(in, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line);
        if (!j.is_object()) {
          throw FormatError(path + ":" + std::to_string(n) + ": input must be an object");
        }
        out.push_back(std::move(j));
      }
      return out;
    }
    json j = json::parse(text);
    if (j.is_object()) {
      out.push_back(std::move(j));
    } else if (j.is_array()) {
      for (json& e : j) {
        if (!e.is_object()) throw FormatError(path + ": inputs must be objects");
        out.push_back(std::move(e));
      }
    } else {
      throw FormatError(path + ": inputs must be an object or an array");
    }
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return out;
}

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Bounds-check elision from inferred safe regions", "hullcheck"};
  app.require_subcommand(1);

  ProfileArgs profile;
  CLI::App* cp = app.add_subcommand("profile", "Full-check runs collecting traces");
  cp->add_option("program", profile.program, "CheckLang source")->required();
  cp->add_option("inputs", profile.inputs, "Input files (.json or .jsonl)");
  cp->add_option("--trace-out", profile.trace_out, "Trace records (JSONL)");
  cp->add_option("--ledger-out", profile.ledger_out, "Per-function check ledger");
  cp->add_option("--threads", profile.threads)->check(CLI::Range(1u, 256u));

  HotspotArgs hot;
  CLI::App* ch = app.add_subcommand("hotspots", "Rank functions by check overhead");
  ch->add_option("file", hot.file, "Ledger from profile, or a cost table")->required();
  ch->add_option("--threshold", hot.threshold, "Selection threshold for O_f");
  ch->add_option("--per-check-cost", hot.per_check, "Cost of one bounds check");
  ch->add_option("--per-stmt-cost", hot.per_stmt, "Cost of one statement");
  ch->add_flag("--json", hot.json, "JSON output");

  BuildArgs build;
  CLI::App* cb = app.add_subcommand("build", "Merge traces into a knowledge base");
  cb->add_option("traces", build.traces, "Trace files (JSONL)");
  cb->add_option("--kind", build.kind)->check(CLI::IsMember({"union", "hull"}));
  cb->add_option("--kb", build.kb, "Knowledge base, updated in place")->required();
  cb->add_option("--c-max", build.c_max, "Negation constant for new bases");

  RunArgs run;
  CLI::App* cr = app.add_subcommand("run", "Chop-mode runs against a knowledge base");
  cr->add_option("program", run.program)->required();
  cr->add_option("inputs", run.inputs);
  cr->add_option("--kb", run.kbs, "One KB, or a union and a hull KB")->required();
  cr->add_option("--report-out", run.report_out, "JSON report");
  cr->add_option("--functions", run.functions, "Guarded functions")->delimiter(',');
  cr->add_option("--threads", run.threads)->check(CLI::Range(1u, 256u));
  cr->add_flag("--no-verify", run.no_verify, "Skip re-verification of bypassed checks");

  std::string kb_path;
  CLI::App* ck = app.add_subcommand("kb", "Knowledge base tools");
  ck->require_subcommand(1);
  CLI::App* ci = ck->add_subcommand("inspect", "Print entries and inequalities");
  ci->add_option("file", kb_path)->required();

  DumpArgs dump;
  CLI::App* cd = app.add_subcommand("dump-dg", "Print dependency graphs");
  cd->add_option("program", dump.program)->required();
  cd->add_option("--function", dump.function);

  GenArgs gen;
  CLI::App* cg = app.add_subcommand("gen", "Seeded corpus generators");
  cg->add_option("what", gen.what, "program, inputs, foo, defang, maingtu or lbm")
      ->check(CLI::IsMember({"program", "inputs", "foo", "defang", "maingtu", "lbm"}));
  cg->add_option("--seed", gen.seed);
  cg->add_option("--count", gen.count);
  cg->add_option("--max-length", gen.max_length, "Longest defang request");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (*cp) return CmdProfile(ctx, profile);
    if (*ch) return CmdHotspots(ctx, hot);
    if (*cb) return CmdBuild(ctx, build);
    if (*cr) return CmdRun(ctx, run);
    if (*ci) {
      out << kb::Inspect(kb::Load(kb_path));
      return 0;
    }
    if (*cd) return CmdDumpDg(ctx, dump);
    if (*cg) return CmdGen(ctx, gen);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  }
  return static_cast<int>(ExitCode::kUsage);
}

}  // namespace hullcheck::cli
