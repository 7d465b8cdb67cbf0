#pragma once

#include <vector>

#include "zonoshape/polytope.hpp"
#include "zonoshape/types.hpp"

namespace zonoshape {

/// Facet {x : normal . x = offset}; normal is primitive and outward.
/// In d = 3 `vertices` lists the facet polygon counter-clockwise seen from
/// outside; in d = 2 it holds the two endpoints.
struct HullFacet {
  IntVec normal;
  std::int64_t offset = 0;
  std::vector<int> vertices;
};

/// Exact convex hull of integer points in d = 2 or 3. Only extreme points are
/// vertices; coplanar triangles are merged into polygonal facets.
struct Hull {
  int dim = 0;
  std::vector<IntVec> vertices;
  std::vector<HullFacet> facets;

  std::size_t edge_count() const;
  bool contains(const IntVec& x) const;
};

/// Throws Degenerate when the points do not span R^d.
Hull convex_hull(const std::vector<IntVec>& points);

/// Strict 2D hull, counter-clockwise, collinear points dropped.
std::vector<IntVec> convex_hull_2d(std::vector<IntVec> points);

/// Fan triangulation from the first vertex.
Polytope<Rational> triangulate(const Hull& hull);

}  // namespace zonoshape
