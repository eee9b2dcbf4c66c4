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


#ifndef HULLCHECK_KB_H_
#define HULLCHECK_KB_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hullcheck/checklang/interpreter.h"
#include "hullcheck/safe_region.h"
#include "hullcheck/trace.h"

namespace hullcheck::kb {

inline constexpr int kFormatVersion = 1;

struct KbKey {
  std::string func;
  std::string scope;   // "function" or "loop:<id>"
  std::string target;  // guarded array

  auto operator<=>(const KbKey& other) const = default;
  bool operator==(const KbKey& other) const = default;
};

struct KbEntry {
  KbKey key;
  RegionKind kind = RegionKind::kHull;
  UnionRegion union_region;
  HullRegion hull_region;
  uint64_t sample_count = 0;  // merged records, including dominated ones
  uint64_t created = 0;       // generation of creation
  uint64_t updated = 0;       // generation of the last region change

  const VariableSignature& signature() const {
    return kind == RegionKind::kUnion ? union_region.signature()
                                      : hull_region.signature();
  }
  RegionDecision Query(const Point& p) const {
    return kind == RegionKind::kUnion ? union_region.Query(p)
                                      : hull_region.Query(p);
  }
};

class KnowledgeBase {
 public:
  explicit KnowledgeBase(RegionKind kind = RegionKind::kHull,
                         uint64_t c_max = kCMax)
      : kind_(kind), c_max_(c_max) {}

  RegionKind kind() const { return kind_; }
  uint64_t c_max() const { return c_max_; }
  uint64_t generation() const { return generation_; }
  const std::map<KbKey, KbEntry>& entries() const { return entries_; }
  const KbEntry* Find(const KbKey& key) const;

  // Verdict for raw variable values. Unknown when there is no entry or the
  // values cannot be transformed.
  RegionDecision Query(const KbKey& key,
                       const std::map<std::string, int64_t>& raw) const;

  std::string Serialize() const;
  // Throws FormatError naming the byte offset, or MigrationError for other
  // format versions.
  static KnowledgeBase Parse(const std::string& text);

 private:
  friend struct Merger;

  RegionKind kind_;
  uint64_t c_max_;
  uint64_t generation_ = 0;
  std::map<KbKey, KbEntry> entries_;
};

KnowledgeBase Load(const std::string& path);
// Atomic: writes a temporary file and renames it.
void Store(const KnowledgeBase& kb, const std::string& path);

struct MergeReport {
  size_t merged = 0;       // records that reached a region
  size_t gated = 0;        // failed checks, early exits, resizes, no accesses
  size_t overflow = 0;     // rejected by the wraparound guard
  size_t invalid = 0;      // values outside the region domain
  size_t resets = 0;       // signature conflicts
  std::vector<std::string> warnings;
};

// Applies the records in order on top of `base`. The result's regions
// contain the base regions query-wise, except for entries reset by a
// signature conflict.
KnowledgeBase Merge(const KnowledgeBase& base,
                    const std::vector<trace::TraceRecord>& records,
                    MergeReport* report = nullptr);

// Human-readable entries with region inequalities over the raw variables.
std::string Inspect(const KnowledgeBase& kb);

// Bypass verdicts from a knowledge base. With a nonempty `functions`
// filter, only those functions are guarded.
class KbOracle : public checklang::BypassOracle {
 public:
  explicit KbOracle(const KnowledgeBase& kb, std::set<std::string> functions = {});

  std::vector<checklang::ScopeTarget> Targets(
      const std::string& func, const std::string& scope) const override;
  bool IsSafe(const std::string& func, const std::string& scope,
              const std::string& target,
              const std::map<std::string, int64_t>& raw) const override;

 private:
  const KnowledgeBase& kb_;
  std::map<std::pair<std::string, std::string>, std::vector<checklang::ScopeTarget>>
      targets_;
};

}  // namespace hullcheck::kb

#endif  // HULLCHECK_KB_H_
