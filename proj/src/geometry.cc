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

#include "hullcheck/geometry.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "hullcheck/error.h"

namespace hullcheck {

namespace {

using RationalRow = std::vector<Rational>;
using IntRow = std::vector<BigInt>;

// Subtracts the RREF rows from `d` so that it vanishes at every pivot.
void ReduceAgainst(const std::vector<RationalRow>& rows,
                   const std::vector<size_t>& pivots, RationalRow* d) {
  for (size_t k = 0; k < rows.size(); ++k) {
    Rational coef = (*d)[pivots[k]];
    if (coef == 0) continue;
    for (size_t j = 0; j < d->size(); ++j) (*d)[j] -= coef * rows[k][j];
  }
}

// Adds `residual` (nonzero, already reduced) to an RREF basis.
void InsertRow(std::vector<RationalRow>* rows, std::vector<size_t>* pivots,
               RationalRow residual) {
  size_t pivot = 0;
  while (residual[pivot] == 0) ++pivot;
  Rational scale = residual[pivot];
  for (Rational& x : residual) x /= scale;
  for (RationalRow& row : *rows) {
    Rational coef = row[pivot];
    if (coef == 0) continue;
    for (size_t j = 0; j < row.size(); ++j) row[j] -= coef * residual[j];
  }
  size_t pos = std::lower_bound(pivots->begin(), pivots->end(), pivot) -
               pivots->begin();
  rows->insert(rows->begin() + pos, std::move(residual));
  pivots->insert(pivots->begin() + pos, pivot);
}

RationalRow Difference(const Point& p, const Point& anchor) {
  RationalRow d(p.dimension());
  for (size_t j = 0; j < p.dimension(); ++j) {
    d[j] = Rational(BigInt(p[j]) - BigInt(anchor[j]));
  }
  return d;
}

bool IsZero(const RationalRow& row) {
  return std::all_of(row.begin(), row.end(),
                     [](const Rational& x) { return x == 0; });
}

size_t RankOf(const std::vector<IntRow>& vectors) {
  std::vector<RationalRow> rows;
  std::vector<size_t> pivots;
  for (const IntRow& v : vectors) {
    RationalRow d(v.begin(), v.end());
    ReduceAgainst(rows, pivots, &d);
    if (!IsZero(d)) InsertRow(&rows, &pivots, std::move(d));
  }
  return rows.size();
}

BigInt Lcm(const BigInt& a, const BigInt& b) { return a / gcd(a, b) * b; }

struct WorkFacet {
  std::vector<size_t> ids;
  IntRow normal;
  BigInt offset;
  bool alive = true;
};

// Beneath-beyond construction over reduced coordinates `y` (all of rank r).
// `order` lists the point indices to insert; `simplex` holds r + 1 affinely
// independent indices among them.
class IncrementalHull {
 public:
  IncrementalHull(const std::vector<IntRow>& y, size_t r) : y_(y), r_(r) {}

  std::vector<WorkFacet> Run(const std::vector<size_t>& order,
                             const std::vector<size_t>& simplex) {
    reference_.assign(r_, 0);
    for (size_t s : simplex) {
      for (size_t k = 0; k < r_; ++k) reference_[k] += y_[s][k];
    }
    for (size_t skip = 0; skip < simplex.size(); ++skip) {
      std::vector<size_t> ids;
      for (size_t i = 0; i < simplex.size(); ++i) {
        if (i != skip) ids.push_back(simplex[i]);
      }
      facets_.push_back(MakeFacet(std::move(ids)));
    }
    std::set<size_t> in_simplex(simplex.begin(), simplex.end());
    for (size_t q : order) {
      if (in_simplex.count(q) == 0) Insert(q);
    }
    std::vector<WorkFacet> alive;
    for (WorkFacet& f : facets_) {
      if (f.alive) alive.push_back(std::move(f));
    }
    return alive;
  }

 private:
  WorkFacet MakeFacet(std::vector<size_t> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<IntRow> rows;
    const IntRow& base = y_[ids[0]];
    for (size_t i = 1; i < ids.size(); ++i) {
      IntRow row(r_);
      for (size_t k = 0; k < r_; ++k) row[k] = y_[ids[i]][k] - base[k];
      rows.push_back(std::move(row));
    }
    WorkFacet f;
    f.normal = GeneralizedCross(rows, r_);
    MakePrimitive(&f.normal);
    f.offset = -Dot(f.normal, base);
    BigInt side = Dot(f.normal, reference_) + BigInt(r_ + 1) * f.offset;
    if (side == 0) throw std::logic_error("degenerate facet in hull build");
    if (side < 0) {
      for (BigInt& x : f.normal) x = -x;
      f.offset = -f.offset;
    }
    f.ids = std::move(ids);
    return f;
  }

  void Insert(size_t q) {
    std::map<std::vector<size_t>, int> ridges;
    bool any_visible = false;
    for (WorkFacet& f : facets_) {
      if (!f.alive) continue;
      if (Dot(f.normal, y_[q]) + f.offset >= 0) continue;
      any_visible = true;
      f.alive = false;
      for (size_t skip = 0; skip < f.ids.size(); ++skip) {
        std::vector<size_t> ridge;
        for (size_t i = 0; i < f.ids.size(); ++i) {
          if (i != skip) ridge.push_back(f.ids[i]);
        }
        ++ridges[ridge];
      }
    }
    if (!any_visible) return;
    for (const auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      std::vector<size_t> ids = ridge;
      ids.push_back(q);
      facets_.push_back(MakeFacet(std::move(ids)));
    }
  }

  const std::vector<IntRow>& y_;
  size_t r_;
  IntRow reference_;
  std::vector<WorkFacet> facets_;
};

void CheckDimensions(const std::vector<Point>& points) {
  if (points.empty()) throw UsageError("hull needs at least one point");
  size_t d = points[0].dimension();
  if (d == 0) throw UsageError("points must have dimension >= 1");
  if (d > kMaxDimension) {
    throw CapabilityError("dimension " + std::to_string(d) +
                          " exceeds the supported maximum of " +
                          std::to_string(kMaxDimension));
  }
  for (const Point& p : points) {
    if (p.dimension() != d) throw UsageError("mixed point dimensions");
  }
}

}  // namespace

Point::Point(std::vector<uint64_t> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw UsageError("point dimension must be >= 1");
  for (uint64_t c : coords_) {
    if (c > kCMax) {
      throw UsageError("coordinate " + std::to_string(c) + " exceeds c_max");
    }
  }
}

bool Dominates(const Point& p, const Point& q) {
  if (p.dimension() != q.dimension()) {
    throw UsageError("dominance test on points of different dimension");
  }
  for (size_t j = 0; j < p.dimension(); ++j) {
    if (q[j] > p[j]) return false;
  }
  return true;
}

AffineFrame::AffineFrame(Point anchor, std::vector<std::vector<Rational>> basis,
                         std::vector<size_t> pivots)
    : anchor_(std::move(anchor)),
      basis_(std::move(basis)),
      pivots_(std::move(pivots)) {}

AffineFrame AffineFrame::Span(const std::vector<Point>& points,
                              std::vector<size_t>* spanning) {
  AffineFrame frame;
  frame.anchor_ = points.at(0);
  if (spanning != nullptr) spanning->assign(1, 0);
  for (size_t i = 1; i < points.size(); ++i) {
    if (frame.rank() == frame.dimension()) break;
    RationalRow d = Difference(points[i], frame.anchor_);
    ReduceAgainst(frame.basis_, frame.pivots_, &d);
    if (IsZero(d)) continue;
    InsertRow(&frame.basis_, &frame.pivots_, std::move(d));
    if (spanning != nullptr) spanning->push_back(i);
  }
  return frame;
}

bool AffineFrame::InSubspace(const Point& p) const {
  if (p.dimension() != dimension()) {
    throw UsageError("point dimension does not match the hull");
  }
  if (rank() == dimension()) return true;
  RationalRow d = Difference(p, anchor_);
  ReduceAgainst(basis_, pivots_, &d);
  return IsZero(d);
}

std::vector<BigInt> AffineFrame::Reduce(const Point& p) const {
  std::vector<BigInt> y(rank());
  for (size_t k = 0; k < rank(); ++k) y[k] = p[pivots_[k]];
  return y;
}

std::vector<std::pair<std::vector<BigInt>, BigInt>> AffineFrame::Equalities()
    const {
  std::vector<std::pair<std::vector<BigInt>, BigInt>> result;
  const size_t d = dimension();
  for (size_t j = 0; j < d; ++j) {
    if (std::binary_search(pivots_.begin(), pivots_.end(), j)) continue;
    RationalRow a(d, Rational(0));
    a[j] = 1;
    for (size_t k = 0; k < rank(); ++k) a[pivots_[k]] = -basis_[k][j];
    Rational b = 0;
    for (size_t i = 0; i < d; ++i) b += a[i] * Rational(BigInt(anchor_[i]));
    BigInt scale = denominator(b);
    for (const Rational& x : a) scale = Lcm(scale, denominator(x));
    std::vector<BigInt> row(d + 1);
    for (size_t i = 0; i < d; ++i) {
      row[i] = numerator(a[i] * Rational(scale));
    }
    row[d] = numerator(b * Rational(scale));
    MakePrimitive(&row);
    BigInt bound = row[d];
    row.pop_back();
    result.emplace_back(std::move(row), std::move(bound));
  }
  return result;
}

Hull BuildHull(const std::vector<Point>& input) {
  CheckDimensions(input);
  std::vector<Point> points = input;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<size_t> spanning;
  Hull hull;
  hull.frame_ = AffineFrame::Span(points, &spanning);
  const size_t r = hull.rank();
  if (r == 0) {
    hull.vertices_ = {points[0]};
    hull.CacheReduced();
    return hull;
  }

  std::vector<IntRow> y;
  y.reserve(points.size());
  for (const Point& p : points) y.push_back(hull.frame_.Reduce(p));

  std::vector<size_t> order(points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<WorkFacet> facets = IncrementalHull(y, r).Run(order, spanning);

  // Coplanar insertions can leave vertices inside a flat face. Such a vertex
  // has incident facet normals of rank < r; rebuild without them.
  std::map<size_t, std::vector<IntRow>> incident;
  for (const WorkFacet& f : facets) {
    for (size_t id : f.ids) incident[id].push_back(f.normal);
  }
  std::vector<size_t> extreme;
  for (const auto& [id, normals] : incident) {
    if (RankOf(normals) == r) extreme.push_back(id);
  }
  if (extreme.size() != incident.size()) {
    std::vector<Point> subset;
    for (size_t id : extreme) subset.push_back(points[id]);
    std::vector<size_t> sub_spanning;
    AffineFrame::Span(subset, &sub_spanning);
    std::vector<size_t> sub_simplex;
    for (size_t i : sub_spanning) sub_simplex.push_back(extreme[i]);
    facets = IncrementalHull(y, r).Run(extreme, sub_simplex);
  }

  std::map<size_t, size_t> remap;
  for (const WorkFacet& f : facets) {
    for (size_t id : f.ids) remap.emplace(id, 0);
  }
  for (auto& [id, index] : remap) {
    index = hull.vertices_.size();
    hull.vertices_.push_back(points[id]);
  }
  for (WorkFacet& f : facets) {
    Facet out;
    for (size_t id : f.ids) out.vertex_ids.push_back(remap[id]);
    out.normal = std::move(f.normal);
    out.offset = std::move(f.offset);
    hull.facets_.push_back(std::move(out));
  }
  std::sort(hull.facets_.begin(), hull.facets_.end(),
            [](const Facet& a, const Facet& b) {
              return a.vertex_ids < b.vertex_ids;
            });
  hull.CacheReduced();
  return hull;
}

void Hull::CacheReduced() {
  reduced_.clear();
  for (const Point& v : vertices_) reduced_.push_back(frame_.Reduce(v));
}

Hull Hull::FromParts(AffineFrame frame, std::vector<Point> vertices,
                     std::vector<Facet> facets) {
  const size_t d = frame.dimension();
  const size_t r = frame.rank();
  if (d == 0 || d > kMaxDimension) throw FormatError("bad hull dimension");
  if (r > d) throw FormatError("hull rank exceeds dimension");
  for (size_t k = 0; k < r; ++k) {
    if (frame.basis()[k].size() != d) throw FormatError("bad basis row size");
    if (frame.pivots()[k] >= d ||
        (k > 0 && frame.pivots()[k] <= frame.pivots()[k - 1])) {
      throw FormatError("pivots not strictly increasing");
    }
    for (size_t m = 0; m < r; ++m) {
      Rational want = (m == k) ? 1 : 0;
      if (frame.basis()[k][frame.pivots()[m]] != want) {
        throw FormatError("basis is not in reduced row echelon form");
      }
    }
  }
  if (vertices.empty()) throw FormatError("hull without vertices");
  for (const Point& v : vertices) {
    if (v.dimension() != d || !frame.InSubspace(v)) {
      throw FormatError("vertex outside the hull's affine subspace");
    }
  }
  if (r == 0) {
    if (vertices.size() != 1 || vertices[0] != frame.anchor() ||
        !facets.empty()) {
      throw FormatError("rank-0 hull must be a single point");
    }
  } else if (facets.size() < r + 1) {
    throw FormatError("too few facets for a bounded hull");
  }
  Hull hull;
  hull.frame_ = std::move(frame);
  hull.vertices_ = std::move(vertices);
  hull.CacheReduced();
  for (const Facet& f : facets) {
    if (f.vertex_ids.size() != r || f.normal.size() != r) {
      throw FormatError("facet arity does not match hull rank");
    }
    if (std::all_of(f.normal.begin(), f.normal.end(),
                    [](const BigInt& x) { return x == 0; })) {
      throw FormatError("zero facet normal");
    }
    for (size_t id : f.vertex_ids) {
      if (id >= hull.vertices_.size()) throw FormatError("bad facet vertex id");
      if (Dot(f.normal, hull.reduced_[id]) + f.offset != 0) {
        throw FormatError("facet vertex off its hyperplane");
      }
    }
    for (const IntRow& v : hull.reduced_) {
      if (Dot(f.normal, v) + f.offset < 0) {
        throw FormatError("facet normal does not point inward");
      }
    }
  }
  hull.facets_ = std::move(facets);
  return hull;
}

bool Hull::Contains(const Point& p) const {
  if (!frame_.InSubspace(p)) return false;
  if (rank() == 0) return true;
  IntRow y = frame_.Reduce(p);
  for (const Facet& f : facets_) {
    const IntRow& rep = reduced_[f.vertex_ids[0]];
    BigInt s = 0;
    for (size_t k = 0; k < y.size(); ++k) s += f.normal[k] * (y[k] - rep[k]);
    if (s < 0) return false;
  }
  return true;
}

std::vector<Inequality> Hull::FacetInequalities() const {
  std::set<Inequality> unique;
  for (const Facet& f : facets_) {
    Inequality in;
    in.coeffs.assign(dimension(), 0);
    for (size_t k = 0; k < rank(); ++k) {
      in.coeffs[frame_.pivots()[k]] = -f.normal[k];
    }
    in.bound = f.offset;
    unique.insert(std::move(in));
  }
  return {unique.begin(), unique.end()};
}

bool Contains(const Hull& h, const Point& p) { return h.Contains(p); }

bool LinearFunctionalBoundCheck(const Hull& h, const std::vector<Rational>& beta,
                                const Rational& c) {
  if (beta.size() != h.dimension()) {
    throw UsageError("functional dimension does not match the hull");
  }
  for (const Point& v : h.vertices()) {
    Rational sum = 0;
    for (size_t j = 0; j < beta.size(); ++j) {
      sum += beta[j] * Rational(BigInt(v[j]));
    }
    if (sum > c) return false;
  }
  return true;
}

}  // namespace hullcheck
