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


#include "hullcheck/trace.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unistd.h>

#include "hullcheck/error.h"

namespace hullcheck::trace {

using nlohmann::json;

json TraceRecord::ToJson() const {
  json j;
  j["func"] = func;
  j["scope"] = scope;
  j["target"] = target;
  j["signature"] = signature;
  j["vars"] = vars;
  j["trip_counts"] = trip_counts;
  j["index_terms"] = index_terms;
  j["accesses"] = accesses;
  j["all_checks_passed"] = all_checks_passed;
  j["complete"] = complete;
  j["resized"] = resized;
  j["fit_holds"] = fit_holds;
  return j;
}

TraceRecord TraceRecord::FromJson(const json& j) {
  TraceRecord r;
  try {
    if (!j.is_object()) throw FormatError("trace record is not an object");
    r.func = j.at("func").get<std::string>();
    r.scope = j.at("scope").get<std::string>();
    r.target = j.value("target", std::string());
    r.signature = j.value("signature", std::vector<std::string>());
    r.vars = j.at("vars").get<std::map<std::string, int64_t>>();
    r.trip_counts = j.value("trip_counts", std::map<std::string, int64_t>());
    r.index_terms = j.value("index_terms", std::vector<int64_t>());
    r.accesses = j.value("accesses", uint64_t{1});
    r.all_checks_passed = j.at("all_checks_passed").get<bool>();
    r.complete = j.value("complete", true);
    r.resized = j.value("resized", false);
    r.fit_holds = j.value("fit_holds", true);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed trace record: ") + e.what());
  }
  if (r.scope != "function" && r.scope.rfind("loop:", 0) != 0) {
    throw FormatError("unknown scope '" + r.scope + "'");
  }
  return r;
}

std::vector<TraceRecord> MakeTraceRecords(
    const std::vector<checklang::RawScopeRecord>& raw,
    const std::vector<depgraph::AffectingSet>& sets,
    const std::map<std::string, depgraph::DependencyGraph>* graphs) {
  std::map<std::tuple<std::string, std::string, std::string>,
           const depgraph::AffectingSet*>
      index;
  for (const depgraph::AffectingSet& s : sets) {
    if (s.eligible) index[{s.func, s.scope, s.target}] = &s;
  }
  std::vector<TraceRecord> out;
  for (const checklang::RawScopeRecord& rec : raw) {
    auto it = index.find({rec.func, rec.scope, rec.target});
    if (it == index.end()) continue;
    const depgraph::AffectingSet& set = *it->second;
    TraceRecord t;
    t.func = rec.func;
    t.scope = rec.scope;
    t.target = rec.target;
    bool ok = true;
    for (const SignatureVar& v : set.vars) {
      t.signature.push_back(v.name + (v.sign == Correlation::kPositive ? ":+" : ":-"));
      auto value = rec.candidates.find(v.name);
      if (value == rec.candidates.end()) {
        ok = false;
        break;
      }
      t.vars[v.name] = value->second;
    }
    if (!ok) continue;
    t.trip_counts = rec.trip_counts;
    t.index_terms = rec.index_terms;
    t.accesses = rec.accesses;
    t.all_checks_passed = rec.all_checks_passed;
    t.complete = rec.complete;
    t.resized = rec.resized;
    if (graphs != nullptr) {
      auto g = graphs->find(rec.func);
      t.fit_holds = g == graphs->end() || depgraph::FitsHold(g->second, rec);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string FormatTrace(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const TraceRecord& r : records) {
    out += r.ToJson().dump();
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> ParseTrace(const std::string& text) {
  std::vector<TraceRecord> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(TraceRecord::FromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw FormatError("trace line " + std::to_string(number) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("trace line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + tmp + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw FormatError("short write to '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw FormatError("cannot replace '" + path + "'");
  }
}

std::vector<TraceRecord> ReadTraceFile(const std::string& path) {
  try {
    return ParseTrace(ReadFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void WriteTraceFile(const std::string& path,
                    const std::vector<TraceRecord>& records) {
  WriteFileAtomic(path, FormatTrace(records));
}

}  // namespace hullcheck::trace
