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

#include "hullcheck/ledger.h"

#include "hullcheck/error.h"

namespace hullcheck {

FunctionLedger& FunctionLedger::operator+=(const FunctionLedger& other) {
  checks_performed += other.checks_performed;
  checks_bypassed += other.checks_bypassed;
  false_positives += other.false_positives;
  statements += other.statements;
  calls += other.calls;
  return *this;
}

FunctionLedger CheckLedger::Total() const {
  FunctionLedger total;
  for (const auto& [name, f] : functions_) total += f;
  return total;
}

void CheckLedger::Merge(const CheckLedger& other) {
  for (const auto& [name, f] : other.functions_) functions_[name] += f;
}

nlohmann::json CheckLedger::ToJson() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, f] : functions_) {
    out[name] = {{"checks_performed", f.checks_performed},
                 {"checks_bypassed", f.checks_bypassed},
                 {"false_positives", f.false_positives},
                 {"statements", f.statements},
                 {"calls", f.calls}};
  }
  return out;
}

CheckLedger CheckLedger::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("ledger must be a JSON object");
  CheckLedger ledger;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_object()) {
      throw FormatError("ledger entry '" + name + "' must be an object");
    }
    auto field = [&](const char* key) -> uint64_t {
      auto it = value.find(key);
      if (it == value.end() || !it->is_number_unsigned()) {
        throw FormatError("ledger entry '" + name + "' lacks '" + key + "'");
      }
      return it->get<uint64_t>();
    };
    FunctionLedger& f = ledger.functions_[name];
    f.checks_performed = field("checks_performed");
    f.checks_bypassed = field("checks_bypassed");
    f.false_positives = field("false_positives");
    f.statements = field("statements");
    f.calls = field("calls");
  }
  return ledger;
}

}  // namespace hullcheck
