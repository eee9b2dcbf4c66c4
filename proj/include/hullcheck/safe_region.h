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

#ifndef HULLCHECK_SAFE_REGION_H_
#define HULLCHECK_SAFE_REGION_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hullcheck/geometry.h"

namespace hullcheck {

enum class Correlation { kPositive, kNegative };

struct SignatureVar {
  std::string name;
  Correlation sign = Correlation::kPositive;

  bool operator==(const SignatureVar& other) const = default;
};

// Ordered pointer-affecting variables; the order fixes coordinate order.
class VariableSignature {
 public:
  VariableSignature() = default;
  explicit VariableSignature(std::vector<SignatureVar> vars,
                             uint64_t c_max = kCMax);

  // Parses entries of the form "name:+" / "name:-".
  static VariableSignature FromStrings(const std::vector<std::string>& items,
                                       uint64_t c_max = kCMax);
  std::vector<std::string> ToStrings() const;

  size_t dimension() const { return vars_.size(); }
  const std::vector<SignatureVar>& vars() const { return vars_; }
  uint64_t c_max() const { return c_max_; }

  bool operator==(const VariableSignature& other) const = default;

 private:
  std::vector<SignatureVar> vars_;
  uint64_t c_max_ = kCMax;
};

// Maps raw values into region coordinates: positive variables pass through,
// negative ones become c_max - value. Throws RegionInputError when a name is
// missing or a value lies outside [0, c_max].
Point Transform(const std::map<std::string, int64_t>& raw,
                const VariableSignature& sig);

enum class RegionKind { kUnion, kHull };
enum class Verdict { kSafe, kUnknown };

const char* RegionKindName(RegionKind kind);
RegionKind ParseRegionKind(const std::string& text);

struct RegionDecision {
  Verdict verdict = Verdict::kUnknown;
  RegionKind kind = RegionKind::kUnion;

  bool safe() const { return verdict == Verdict::kSafe; }
};

// True iff some partial sum of the index terms exceeds c_max, i.e. the index
// arithmetic would wrap in unsigned 32-bit evaluation.
bool OverflowReject(const std::vector<int64_t>& raw_index_terms,
                    uint64_t c_max);

struct OverflowSpec {
  std::vector<int64_t> index_terms;
  uint64_t c_max = kCMax;
};

// Pareto frontier of observed safe points.
class UnionRegion {
 public:
  UnionRegion() = default;
  explicit UnionRegion(VariableSignature sig) : signature_(std::move(sig)) {}

  // Validates that `frontier` is an antichain of the right dimension.
  static UnionRegion FromFrontier(VariableSignature sig,
                                  std::vector<Point> frontier);

  UnionRegion Insert(const Point& p) const;
  RegionDecision Query(const Point& p) const;

  const VariableSignature& signature() const { return signature_; }
  const std::vector<Point>& frontier() const { return frontier_; }

 private:
  VariableSignature signature_;
  std::vector<Point> frontier_;  // sorted
};

// The 2^D points obtained by zeroing any subset of the sample's coordinates.
std::vector<Point> AugmentationPoints(const Point& sample);

// Convex hull of the samples' dominance boxes.
class HullRegion {
 public:
  HullRegion() = default;
  // Empty region; every query is unknown until the first update.
  explicit HullRegion(VariableSignature sig) : signature_(std::move(sig)) {}

  static HullRegion Build(const std::vector<Point>& samples,
                          VariableSignature sig);
  static HullRegion FromParts(VariableSignature sig, std::vector<Point> samples,
                              Hull hull);

  RegionDecision Query(const Point& p) const;
  HullRegion Update(const Point& p, const OverflowSpec& guard) const;

  const VariableSignature& signature() const { return signature_; }
  const std::vector<Point>& samples() const { return samples_; }
  const Hull& hull() const { return hull_; }
  bool empty() const { return samples_.empty(); }

 private:
  VariableSignature signature_;
  std::vector<Point> samples_;  // sorted, unique
  Hull hull_;
};

}  // namespace hullcheck

#endif  // HULLCHECK_SAFE_REGION_H_
