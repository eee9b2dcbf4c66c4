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

#include "hullcheck/safe_region.h"

#include <algorithm>
#include <set>
#include <utility>

#include "hullcheck/error.h"

namespace hullcheck {

namespace {

void CheckPointDimension(const VariableSignature& sig, const Point& p) {
  if (p.dimension() != sig.dimension()) {
    throw UsageError("point dimension " + std::to_string(p.dimension()) +
                     " does not match signature dimension " +
                     std::to_string(sig.dimension()));
  }
}

// Pareto-maximal subset, sorted.
std::vector<Point> Frontier(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Point> out;
  for (size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && Dominates(points[j], points[i]);
    }
    if (!dominated) out.push_back(points[i]);
  }
  return out;
}

}  // namespace

VariableSignature::VariableSignature(std::vector<SignatureVar> vars,
                                     uint64_t c_max)
    : vars_(std::move(vars)), c_max_(c_max) {
  if (c_max_ == 0 || c_max_ > kCMax) {
    throw UsageError("c_max must lie in [1, 2^32 - 1]");
  }
  if (vars_.size() > kMaxDimension) {
    throw CapabilityError("signature has " + std::to_string(vars_.size()) +
                          " variables; at most " +
                          std::to_string(kMaxDimension) + " are supported");
  }
  std::set<std::string> seen;
  for (const SignatureVar& v : vars_) {
    if (v.name.empty()) throw UsageError("empty signature variable name");
    if (!seen.insert(v.name).second) {
      throw UsageError("duplicate signature variable '" + v.name + "'");
    }
  }
}

VariableSignature VariableSignature::FromStrings(
    const std::vector<std::string>& items, uint64_t c_max) {
  std::vector<SignatureVar> vars;
  for (const std::string& item : items) {
    size_t colon = item.rfind(':');
    if (colon == std::string::npos || colon + 2 != item.size() ||
        (item.back() != '+' && item.back() != '-')) {
      throw FormatError("malformed signature entry '" + item + "'");
    }
    vars.push_back({item.substr(0, colon), item.back() == '+'
                                               ? Correlation::kPositive
                                               : Correlation::kNegative});
  }
  return VariableSignature(std::move(vars), c_max);
}

std::vector<std::string> VariableSignature::ToStrings() const {
  std::vector<std::string> out;
  for (const SignatureVar& v : vars_) {
    out.push_back(v.name +
                  (v.sign == Correlation::kPositive ? ":+" : ":-"));
  }
  return out;
}

Point Transform(const std::map<std::string, int64_t>& raw,
                const VariableSignature& sig) {
  std::vector<uint64_t> coords;
  coords.reserve(sig.dimension());
  for (const SignatureVar& v : sig.vars()) {
    auto it = raw.find(v.name);
    if (it == raw.end()) {
      throw RegionInputError("no value for variable '" + v.name + "'");
    }
    int64_t value = it->second;
    if (value < 0 || static_cast<uint64_t>(value) > sig.c_max()) {
      throw RegionInputError("value " + std::to_string(value) + " of '" +
                             v.name + "' outside [0, c_max]");
    }
    uint64_t u = static_cast<uint64_t>(value);
    coords.push_back(v.sign == Correlation::kPositive ? u : sig.c_max() - u);
  }
  if (coords.empty()) {
    throw RegionInputError("empty signature has no region coordinates");
  }
  return Point(std::move(coords));
}

const char* RegionKindName(RegionKind kind) {
  return kind == RegionKind::kUnion ? "union" : "hull";
}

RegionKind ParseRegionKind(const std::string& text) {
  if (text == "union") return RegionKind::kUnion;
  if (text == "hull") return RegionKind::kHull;
  throw UsageError("unknown region kind '" + text + "'");
}

bool OverflowReject(const std::vector<int64_t>& raw_index_terms,
                    uint64_t c_max) {
  __int128 sum = 0;
  for (int64_t term : raw_index_terms) {
    sum += term;
    if (sum > static_cast<__int128>(c_max)) return true;
  }
  return false;
}

UnionRegion UnionRegion::FromFrontier(VariableSignature sig,
                                      std::vector<Point> frontier) {
  UnionRegion r(std::move(sig));
  for (const Point& p : frontier) CheckPointDimension(r.signature_, p);
  std::vector<Point> reduced = Frontier(frontier);
  if (reduced.size() != frontier.size()) {
    throw FormatError("union frontier is not an antichain");
  }
  r.frontier_ = std::move(reduced);
  return r;
}

UnionRegion UnionRegion::Insert(const Point& p) const {
  CheckPointDimension(signature_, p);
  for (const Point& f : frontier_) {
    if (Dominates(f, p)) return *this;
  }
  UnionRegion next(signature_);
  for (const Point& f : frontier_) {
    if (!Dominates(p, f)) next.frontier_.push_back(f);
  }
  next.frontier_.insert(
      std::lower_bound(next.frontier_.begin(), next.frontier_.end(), p), p);
  return next;
}

RegionDecision UnionRegion::Query(const Point& p) const {
  CheckPointDimension(signature_, p);
  for (const Point& f : frontier_) {
    if (Dominates(f, p)) return {Verdict::kSafe, RegionKind::kUnion};
  }
  return {Verdict::kUnknown, RegionKind::kUnion};
}

std::vector<Point> AugmentationPoints(const Point& sample) {
  const size_t d = sample.dimension();
  std::vector<Point> out;
  out.reserve(size_t{1} << d);
  for (uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::vector<uint64_t> c(d);
    for (size_t j = 0; j < d; ++j) c[j] = (mask >> j & 1u) ? sample[j] : 0;
    out.emplace_back(std::move(c));
  }
  return out;
}

HullRegion HullRegion::Build(const std::vector<Point>& samples,
                             VariableSignature sig) {
  if (samples.empty()) throw UsageError("hull region needs a sample");
  if (sig.dimension() == 0) throw UsageError("empty signature");
  HullRegion r;
  r.signature_ = std::move(sig);
  for (const Point& p : samples) CheckPointDimension(r.signature_, p);
  r.samples_ = samples;
  std::sort(r.samples_.begin(), r.samples_.end());
  r.samples_.erase(std::unique(r.samples_.begin(), r.samples_.end()),
                   r.samples_.end());
  // Dominated samples lie in a frontier point's box and add nothing.
  std::vector<Point> points;
  for (const Point& f : Frontier(r.samples_)) {
    for (Point& a : AugmentationPoints(f)) points.push_back(std::move(a));
  }
  r.hull_ = BuildHull(points);
  return r;
}

HullRegion HullRegion::FromParts(VariableSignature sig,
                                 std::vector<Point> samples, Hull hull) {
  HullRegion r;
  r.signature_ = std::move(sig);
  if (hull.dimension() != r.signature_.dimension()) {
    throw FormatError("hull dimension does not match signature");
  }
  for (const Point& p : samples) {
    CheckPointDimension(r.signature_, p);
    if (!hull.Contains(p)) throw FormatError("sample outside its hull");
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  r.samples_ = std::move(samples);
  r.hull_ = std::move(hull);
  return r;
}

RegionDecision HullRegion::Query(const Point& p) const {
  CheckPointDimension(signature_, p);
  bool safe = !samples_.empty() && hull_.Contains(p);
  return {safe ? Verdict::kSafe : Verdict::kUnknown, RegionKind::kHull};
}

HullRegion HullRegion::Update(const Point& p, const OverflowSpec& guard) const {
  CheckPointDimension(signature_, p);
  if (OverflowReject(guard.index_terms, guard.c_max)) return *this;
  if (samples_.empty()) return Build({p}, signature_);
  if (hull_.Contains(p)) return *this;
  // conv(S + p) = conv(vert(conv S) + p), and conv S is downward-closed.
  std::vector<Point> points = hull_.vertices();
  for (Point& a : AugmentationPoints(p)) points.push_back(std::move(a));
  HullRegion next;
  next.signature_ = signature_;
  next.samples_ = samples_;
  next.samples_.insert(
      std::lower_bound(next.samples_.begin(), next.samples_.end(), p), p);
  next.hull_ = BuildHull(points);
  return next;
}

}  // namespace hullcheck
