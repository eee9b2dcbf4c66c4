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

#ifndef HULLCHECK_LEDGER_H_
#define HULLCHECK_LEDGER_H_

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace hullcheck {

struct FunctionLedger {
  uint64_t checks_performed = 0;
  uint64_t checks_bypassed = 0;
  uint64_t false_positives = 0;
  uint64_t statements = 0;
  uint64_t calls = 0;

  uint64_t total_checks() const { return checks_performed + checks_bypassed; }
  FunctionLedger& operator+=(const FunctionLedger& other);
  bool operator==(const FunctionLedger& other) const = default;
};

// Per-function check accounting for one or more runs. Merging is
// associative and commutative.
class CheckLedger {
 public:
  FunctionLedger& For(const std::string& func) { return functions_[func]; }
  const std::map<std::string, FunctionLedger>& functions() const {
    return functions_;
  }

  FunctionLedger Total() const;
  void Merge(const CheckLedger& other);

  nlohmann::json ToJson() const;
  // Throws FormatError.
  static CheckLedger FromJson(const nlohmann::json& j);

  bool operator==(const CheckLedger& other) const = default;

 private:
  std::map<std::string, FunctionLedger> functions_;
};

}  // namespace hullcheck

#endif  // HULLCHECK_LEDGER_H_
