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


#include "hullcheck/kb.h"

#include <sstream>
#include <utility>

#include "hullcheck/error.h"
#include "hullcheck/exact.h"

namespace hullcheck::kb {

const KbEntry* KnowledgeBase::Find(const KbKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

RegionDecision KnowledgeBase::Query(
    const KbKey& key, const std::map<std::string, int64_t>& raw) const {
  RegionDecision unknown;
  unknown.kind = kind_;
  const KbEntry* e = Find(key);
  if (e == nullptr) return unknown;
  try {
    return e->Query(Transform(raw, e->signature()));
  } catch (const RegionInputError&) {
    return unknown;
  }
}

// --- Serialization ----------------------------------------------------------

namespace {

void WritePoint(std::ostringstream& out, const Point& p) {
  for (size_t i = 0; i < p.dimension(); ++i) out << (i ? " " : "") << p[i];
  out << '\n';
}

void WriteHull(std::ostringstream& out, const Hull& h) {
  const AffineFrame& f = h.frame();
  out << "anchor ";
  WritePoint(out, f.anchor());
  out << "basis " << f.basis().size() << '\n';
  for (const auto& row : f.basis()) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? " " : "") << FormatRational(row[i]);
    }
    out << '\n';
  }
  out << "pivots";
  for (size_t p : f.pivots()) out << ' ' << p;
  out << '\n';
  out << "vertices " << h.vertices().size() << '\n';
  for (const Point& v : h.vertices()) WritePoint(out, v);
  out << "facets " << h.facets().size() << '\n';
  for (const Facet& facet : h.facets()) {
    for (size_t i = 0; i < facet.vertex_ids.size(); ++i) {
      out << (i ? " " : "") << facet.vertex_ids[i];
    }
    out << " ;";
    for (const BigInt& c : facet.normal) out << ' ' << FormatBigInt(c);
    out << " ; " << FormatBigInt(facet.offset) << '\n';
  }
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  bool AtEnd() const { return pos_ >= text_.size(); }

  // Next line split into whitespace-separated tokens.
  std::vector<std::string> Line() {
    if (AtEnd()) Fail("unexpected end of file");
    line_start_ = pos_;
    size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) Fail("unterminated line");
    std::istringstream in(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
  }

  std::vector<std::string> Expect(const std::string& keyword, size_t args) {
    std::vector<std::string> t = Line();
    if (t.empty() || t[0] != keyword) Fail("expected '" + keyword + "'");
    if (args != kAny && t.size() != args + 1) {
      Fail("'" + keyword + "' takes " + std::to_string(args) + " values");
    }
    return t;
  }

  uint64_t Count(const std::string& keyword) {
    return Unsigned(Expect(keyword, 1)[1]);
  }

  uint64_t Unsigned(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
        s.size() > 20) {
      Fail("expected an unsigned integer, found '" + s + "'");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      Fail("integer '" + s + "' is out of range");
    }
  }

  Point ReadPoint(size_t dim) {
    std::vector<std::string> t = Line();
    if (t.size() != dim) Fail("expected " + std::to_string(dim) + " coordinates");
    std::vector<uint64_t> coords;
    for (const std::string& s : t) coords.push_back(Unsigned(s));
    return Point(std::move(coords));
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw FormatError("KB byte " + std::to_string(line_start_) + ": " + message);
  }

  size_t line_start() const { return line_start_; }

  static constexpr size_t kAny = static_cast<size_t>(-1);

 private:
  const std::string& text_;
  size_t pos_ = 0;
  size_t line_start_ = 0;
};

Hull ReadHull(Reader& r, size_t dim) {
  std::vector<std::string> anchor = r.Expect("anchor", dim);
  std::vector<uint64_t> coords;
  for (size_t i = 1; i < anchor.size(); ++i) coords.push_back(r.Unsigned(anchor[i]));
  uint64_t rank = r.Count("basis");
  if (rank > dim) r.Fail("basis larger than the dimension");
  std::vector<std::vector<Rational>> basis;
  for (uint64_t i = 0; i < rank; ++i) {
    std::vector<std::string> t = r.Line();
    if (t.size() != dim) r.Fail("basis row needs " + std::to_string(dim) + " entries");
    std::vector<Rational> row;
    for (const std::string& s : t) {
      try {
        row.push_back(ParseRational(s));
      } catch (const FormatError& e) {
        r.Fail(e.what());
      }
    }
    basis.push_back(std::move(row));
  }
  std::vector<std::string> piv = r.Expect("pivots", rank);
  std::vector<size_t> pivots;
  for (size_t i = 1; i < piv.size(); ++i) pivots.push_back(r.Unsigned(piv[i]));
  uint64_t nv = r.Count("vertices");
  std::vector<Point> vertices;
  for (uint64_t i = 0; i < nv; ++i) vertices.push_back(r.ReadPoint(dim));
  uint64_t nf = r.Count("facets");
  std::vector<Facet> facets;
  for (uint64_t i = 0; i < nf; ++i) {
    std::vector<std::string> t = r.Line();
    Facet f;
    size_t part = 0;
    for (const std::string& s : t) {
      if (s == ";") {
        ++part;
        continue;
      }
      try {
        if (part == 0) {
          f.vertex_ids.push_back(r.Unsigned(s));
        } else if (part == 1) {
          f.normal.push_back(ParseBigInt(s));
        } else if (part == 2) {
          f.offset = ParseBigInt(s);
          ++part;
        } else {
          r.Fail("trailing facet data");
        }
      } catch (const FormatError& e) {
        if (std::string(e.what()).rfind("KB byte", 0) == 0) throw;
        r.Fail(e.what());
      }
    }
    if (part != 3) r.Fail("facet needs vertex ids, a normal and an offset");
    facets.push_back(std::move(f));
  }
  try {
    AffineFrame frame(Point(std::move(coords)), std::move(basis), std::move(pivots));
    return Hull::FromParts(std::move(frame), std::move(vertices), std::move(facets));
  } catch (const Error& e) {
    r.Fail(std::string("inconsistent hull: ") + e.what());
  }
}

}  // namespace

std::string KnowledgeBase::Serialize() const {
  std::ostringstream out;
  out << "hullcheck-kb " << kFormatVersion << '\n';
  out << "kind " << RegionKindName(kind_) << '\n';
  out << "c_max " << c_max_ << '\n';
  out << "generation " << generation_ << '\n';
  for (const auto& [key, e] : entries_) {
    out << "entry " << key.func << ' ' << key.scope << ' ' << key.target << '\n';
    out << "signature";
    for (const std::string& s : e.signature().ToStrings()) out << ' ' << s;
    out << '\n';
    out << "samples " << e.sample_count << '\n';
    out << "created " << e.created << '\n';
    out << "updated " << e.updated << '\n';
    const std::vector<Point>& points =
        kind_ == RegionKind::kUnion ? e.union_region.frontier() : e.hull_region.samples();
    out << "points " << points.size() << '\n';
    for (const Point& p : points) WritePoint(out, p);
    if (kind_ == RegionKind::kHull && !points.empty()) {
      WriteHull(out, e.hull_region.hull());
    }
  }
  out << "end " << entries_.size() << '\n';
  return out.str();
}

KnowledgeBase KnowledgeBase::Parse(const std::string& text) {
  Reader r(text);
  std::vector<std::string> header = r.Line();
  if (header.size() != 2 || header[0] != "hullcheck-kb") {
    r.Fail("not a hullcheck knowledge base");
  }
  if (header[1] != std::to_string(kFormatVersion)) {
    throw MigrationError("KB format version " + header[1] + " is not supported (expected " +
                         std::to_string(kFormatVersion) + ")");
  }
  RegionKind kind = RegionKind::kHull;
  std::vector<std::string> k = r.Expect("kind", 1);
  try {
    kind = ParseRegionKind(k[1]);
  } catch (const Error& e) {
    r.Fail(e.what());
  }
  uint64_t c_max = r.Count("c_max");
  if (c_max == 0 || c_max > kCMax) r.Fail("c_max out of range");
  KnowledgeBase kb(kind, c_max);
  kb.generation_ = r.Count("generation");
  while (true) {
    std::vector<std::string> t = r.Line();
    if (!t.empty() && t[0] == "end") {
      if (t.size() != 2 || r.Unsigned(t[1]) != kb.entries_.size()) {
        r.Fail("entry count does not match the trailer");
      }
      if (!r.AtEnd()) r.Fail("data after the trailer");
      return kb;
    }
    if (t.size() != 4 || t[0] != "entry") r.Fail("expected 'entry' or 'end'");
    size_t entry_start = r.line_start();
    KbEntry e;
    e.key = {t[1], t[2], t[3]};
    e.kind = kind;
    if (e.key.scope != "function" && e.key.scope.rfind("loop:", 0) != 0) {
      r.Fail("bad scope '" + e.key.scope + "'");
    }
    std::vector<std::string> sig_items = r.Expect("signature", Reader::kAny);
    sig_items.erase(sig_items.begin());
    VariableSignature sig;
    try {
      sig = VariableSignature::FromStrings(sig_items, c_max);
    } catch (const Error& ex) {
      r.Fail(ex.what());
    }
    if (sig.dimension() == 0 || sig.dimension() > kMaxDimension) {
      r.Fail("signature dimension out of range");
    }
    e.sample_count = r.Count("samples");
    e.created = r.Count("created");
    e.updated = r.Count("updated");
    uint64_t np = r.Count("points");
    std::vector<Point> points;
    for (uint64_t i = 0; i < np; ++i) points.push_back(r.ReadPoint(sig.dimension()));
    try {
      if (kind == RegionKind::kUnion) {
        e.union_region = UnionRegion::FromFrontier(sig, std::move(points));
      } else if (points.empty()) {
        e.hull_region = HullRegion(sig);
      } else {
        Hull hull = ReadHull(r, sig.dimension());
        e.hull_region = HullRegion::FromParts(sig, std::move(points), std::move(hull));
      }
    } catch (const FormatError& ex) {
      if (std::string(ex.what()).rfind("KB byte", 0) == 0) throw;
      throw FormatError("KB byte " + std::to_string(entry_start) + ": " + ex.what());
    } catch (const Error& ex) {
      throw FormatError("KB byte " + std::to_string(entry_start) + ": " + ex.what());
    }
    if (!kb.entries_.emplace(e.key, std::move(e)).second) {
      throw FormatError("KB byte " + std::to_string(entry_start) + ": duplicate entry");
    }
  }
}

KnowledgeBase Load(const std::string& path) {
  std::string text = trace::ReadFile(path);
  try {
    return KnowledgeBase::Parse(text);
  } catch (const MigrationError& e) {
    throw MigrationError(path + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void Store(const KnowledgeBase& kb, const std::string& path) {
  trace::WriteFileAtomic(path, kb.Serialize());
}

// --- Merge ------------------------------------------------------------------

struct Merger {
  static KnowledgeBase Run(const KnowledgeBase& base,
                           const std::vector<trace::TraceRecord>& records,
                           MergeReport* report) {
    KnowledgeBase kb = base;
    ++kb.generation_;
    const uint64_t gen = kb.generation_;
    for (const trace::TraceRecord& rec : records) {
      KbKey key{rec.func, rec.scope, rec.target};
      std::string where = rec.func + " " + rec.scope + " " + rec.target;
      if (!rec.Mergeable()) {
        ++report->gated;
        continue;
      }
      VariableSignature sig;
      Point p;
      try {
        sig = VariableSignature::FromStrings(rec.signature, kb.c_max_);
        if (sig.dimension() > kMaxDimension) {
          throw RegionInputError("signature has too many variables");
        }
        if (OverflowReject(rec.index_terms, kb.c_max_)) {
          ++report->overflow;
          report->warnings.push_back(where +
                                     ": index arithmetic wraps around; sample discarded");
          continue;
        }
        p = Transform(rec.vars, sig);
      } catch (const Error& e) {
        ++report->invalid;
        report->warnings.push_back(where + ": " + e.what());
        continue;
      }
      auto it = kb.entries_.find(key);
      if (it != kb.entries_.end() && !(it->second.signature() == sig)) {
        ++report->resets;
        report->warnings.push_back(where + ": signature changed; entry reset");
        kb.entries_.erase(it);
        it = kb.entries_.end();
      }
      if (it == kb.entries_.end()) {
        KbEntry e;
        e.key = key;
        e.kind = kb.kind_;
        e.union_region = UnionRegion(sig);
        e.hull_region = HullRegion(sig);
        e.created = gen;
        e.updated = gen;
        it = kb.entries_.emplace(key, std::move(e)).first;
      }
      KbEntry& e = it->second;
      ++e.sample_count;
      ++report->merged;
      if (kb.kind_ == RegionKind::kUnion) {
        UnionRegion next = e.union_region.Insert(p);
        if (next.frontier() != e.union_region.frontier()) e.updated = gen;
        e.union_region = std::move(next);
      } else {
        HullRegion next = e.hull_region.Update(p, {rec.index_terms, kb.c_max_});
        if (next.samples() != e.hull_region.samples()) e.updated = gen;
        e.hull_region = std::move(next);
      }
    }
    return kb;
  }
};

KnowledgeBase Merge(const KnowledgeBase& base,
                    const std::vector<trace::TraceRecord>& records,
                    MergeReport* report) {
  MergeReport local;
  return Merger::Run(base, records, report != nullptr ? report : &local);
}

// --- Inspect ----------------------------------------------------------------

namespace {

// Writes sum(coeffs[i] * names[i]) <op> rhs.
std::string FormatRelation(const std::vector<BigInt>& coeffs,
                           const std::vector<std::string>& names,
                           const std::string& op, const BigInt& rhs) {
  std::string out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    BigInt c = coeffs[i];
    if (c == 0) continue;
    bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (c != 1) out += FormatBigInt(c) + "*";
    out += names[i];
  }
  if (out.empty()) out = "0";
  return out + " " + op + " " + FormatBigInt(rhs);
}

// a . x <op> b over region coordinates, rewritten over raw values where
// x_j = c_max - v_j for negatively correlated variables.
std::string RawRelation(std::vector<BigInt> a, BigInt b, const VariableSignature& sig,
                        const std::string& op) {
  std::vector<std::string> names;
  for (size_t j = 0; j < sig.dimension(); ++j) {
    const SignatureVar& v = sig.vars()[j];
    names.push_back(v.name);
    if (v.sign == Correlation::kNegative) {
      b -= a[j] * BigInt(sig.c_max());
      a[j] = -a[j];
    }
  }
  size_t nonzero = 0;
  size_t which = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] != 0) {
      ++nonzero;
      which = j;
    }
  }
  if (nonzero == 1 && op == "<=") {
    // Threshold view: v <= floor(b / a) or v >= ceil(b / a).
    BigInt c = a[which];
    if (c > 0) {
      BigInt q = b / c;
      if (q * c > b) q -= 1;
      return names[which] + " <= " + FormatBigInt(q);
    }
    BigInt q = b / c;
    if (q * c > b) q += 1;
    return names[which] + " >= " + FormatBigInt(q);
  }
  return FormatRelation(a, names, op, b);
}

}  // namespace

std::string Inspect(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << "knowledge base: " << RegionKindName(kb.kind()) << " regions, "
      << kb.entries().size() << " entries, c_max " << kb.c_max() << ", generation "
      << kb.generation() << '\n';
  for (const auto& [key, e] : kb.entries()) {
    const VariableSignature& sig = e.signature();
    out << '\n' << key.func << " " << key.scope << " " << key.target << " (";
    std::vector<std::string> items = sig.ToStrings();
    for (size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << items[i];
    out << ")\n";
    out << "  samples " << e.sample_count << ", created " << e.created
        << ", updated " << e.updated << '\n';
    auto raw_point = [&](const Point& p) {
      std::string s = "(";
      for (size_t j = 0; j < p.dimension(); ++j) {
        uint64_t v = sig.vars()[j].sign == Correlation::kPositive ? p[j] : sig.c_max() - p[j];
        s += (j ? ", " : "") + sig.vars()[j].name + "=" + std::to_string(v);
      }
      return s + ")";
    };
    if (kb.kind() == RegionKind::kUnion) {
      out << "  safe if dominated by one of " << e.union_region.frontier().size()
          << " points:\n";
      for (const Point& p : e.union_region.frontier()) out << "    " << raw_point(p) << '\n';
      continue;
    }
    if (e.hull_region.empty()) {
      out << "  empty region\n";
      continue;
    }
    out << "  samples:";
    for (const Point& p : e.hull_region.samples()) out << ' ' << raw_point(p);
    out << "\n  safe if all of:\n";
    const Hull& h = e.hull_region.hull();
    for (const auto& [a, b] : h.frame().Equalities()) {
      out << "    " << RawRelation(a, b, sig, "=") << '\n';
    }
    for (const Inequality& q : h.FacetInequalities()) {
      out << "    " << RawRelation(q.coeffs, q.bound, sig, "<=") << '\n';
    }
  }
  return out.str();
}

// --- Oracle -----------------------------------------------------------------

KbOracle::KbOracle(const KnowledgeBase& kb, std::set<std::string> functions)
    : kb_(kb) {
  for (const auto& [key, e] : kb.entries()) {
    if (!functions.empty() && functions.count(key.func) == 0) continue;
    checklang::ScopeTarget t;
    t.target = key.target;
    for (const SignatureVar& v : e.signature().vars()) t.vars.push_back(v.name);
    targets_[{key.func, key.scope}].push_back(std::move(t));
  }
}

std::vector<checklang::ScopeTarget> KbOracle::Targets(const std::string& func,
                                                      const std::string& scope) const {
  auto it = targets_.find({func, scope});
  return it == targets_.end() ? std::vector<checklang::ScopeTarget>{} : it->second;
}

bool KbOracle::IsSafe(const std::string& func, const std::string& scope,
                      const std::string& target,
                      const std::map<std::string, int64_t>& raw) const {
  return kb_.Query({func, scope, target}, raw).safe();
}

}  // namespace hullcheck::kb
