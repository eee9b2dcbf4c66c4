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

#ifndef HULLCHECK_GEOMETRY_H_
#define HULLCHECK_GEOMETRY_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hullcheck/exact.h"

namespace hullcheck {

inline constexpr uint64_t kCMax = 4294967295ULL;
inline constexpr size_t kMaxDimension = 8;

// A D-dimensional point with coordinates in [0, kCMax].
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<uint64_t> coords);
  Point(std::initializer_list<uint64_t> coords)
      : Point(std::vector<uint64_t>(coords)) {}

  size_t dimension() const { return coords_.size(); }
  uint64_t operator[](size_t i) const { return coords_[i]; }
  const std::vector<uint64_t>& coords() const { return coords_; }

  auto operator<=>(const Point& other) const = default;
  bool operator==(const Point& other) const = default;

 private:
  std::vector<uint64_t> coords_;
};

// True iff q_j <= p_j for every coordinate.
bool Dominates(const Point& p, const Point& q);

// Simplicial facet of a hull, expressed in the hull's reduced coordinates.
// A reduced point y is on the inner side iff normal . y + offset >= 0.
struct Facet {
  std::vector<size_t> vertex_ids;  // indices into Hull::vertices()
  std::vector<BigInt> normal;      // primitive integer vector, points inward
  BigInt offset;

  bool operator==(const Facet& other) const = default;
};

// Affine hull of a point set: anchor + row space of an RREF basis. Reduced
// coordinates of a point are its values at the pivot columns.
class AffineFrame {
 public:
  AffineFrame() = default;
  AffineFrame(Point anchor, std::vector<std::vector<Rational>> basis,
              std::vector<size_t> pivots);

  // Frame spanned by `points`; `spanning` receives the indices of the points
  // that raised the rank (the first entry is the anchor, index 0).
  static AffineFrame Span(const std::vector<Point>& points,
                          std::vector<size_t>* spanning);

  size_t dimension() const { return anchor_.dimension(); }
  size_t rank() const { return pivots_.size(); }
  const Point& anchor() const { return anchor_; }
  const std::vector<std::vector<Rational>>& basis() const { return basis_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  bool InSubspace(const Point& p) const;
  std::vector<BigInt> Reduce(const Point& p) const;

  // Rows (a, b) such that the subspace is { x : a . x = b }; empty at full
  // rank. Coefficients are scaled to coprime integers.
  std::vector<std::pair<std::vector<BigInt>, BigInt>> Equalities() const;

  bool operator==(const AffineFrame& other) const = default;

 private:
  Point anchor_;
  std::vector<std::vector<Rational>> basis_;
  std::vector<size_t> pivots_;
};

// Half-space a . x <= b in original coordinates.
struct Inequality {
  std::vector<BigInt> coeffs;
  BigInt bound;

  bool operator==(const Inequality& other) const = default;
  bool operator<(const Inequality& other) const {
    if (coeffs != other.coeffs) return coeffs < other.coeffs;
    return bound < other.bound;
  }
};

class Hull {
 public:
  Hull() = default;

  // Reassembles a hull from stored parts and validates every invariant.
  // Throws FormatError on inconsistent parts.
  static Hull FromParts(AffineFrame frame, std::vector<Point> vertices,
                        std::vector<Facet> facets);

  size_t dimension() const { return frame_.dimension(); }
  size_t rank() const { return frame_.rank(); }
  const AffineFrame& frame() const { return frame_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool Contains(const Point& p) const;

  // Facet half-spaces mapped to original coordinates, deduplicated and
  // sorted. Only meaningful together with frame().Equalities().
  std::vector<Inequality> FacetInequalities() const;

  bool operator==(const Hull& other) const {
    return frame_ == other.frame_ && vertices_ == other.vertices_ &&
           facets_ == other.facets_;
  }

 private:
  friend Hull BuildHull(const std::vector<Point>& points);

  void CacheReduced();

  AffineFrame frame_;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<BigInt>> reduced_;
};

// Convex hull of a nonempty point set of uniform dimension <= kMaxDimension.
Hull BuildHull(const std::vector<Point>& points);

bool Contains(const Hull& h, const Point& p);

// True iff every vertex v satisfies beta . v <= c.
bool LinearFunctionalBoundCheck(const Hull& h, const std::vector<Rational>& beta,
                                const Rational& c);

}  // namespace hullcheck

#endif  // HULLCHECK_GEOMETRY_H_
