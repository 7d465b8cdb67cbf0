#include "zonoshape/hull.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "zonoshape/numeric.hpp"

namespace zonoshape {

namespace {

Int128 cross2(const IntVec& o, const IntVec& a, const IntVec& b) {
  return Int128(a[0] - o[0]) * (b[1] - o[1]) - Int128(a[1] - o[1]) * (b[0] - o[0]);
}

std::array<Int128, 3> normal3(const IntVec& a, const IntVec& b, const IntVec& c) {
  const Int128 u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
  const Int128 v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
  return {u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0};
}

Int128 side3(const IntVec& a, const IntVec& b, const IntVec& c, const IntVec& p) {
  const auto n = normal3(a, b, c);
  return n[0] * (p[0] - a[0]) + n[1] * (p[1] - a[1]) + n[2] * (p[2] - a[2]);
}

void check_range(const std::vector<IntVec>& pts) {
  for (const auto& p : pts)
    for (auto x : p)
      require(x < (std::int64_t(1) << 30) && x > -(std::int64_t(1) << 30), ErrorKind::Unsupported,
              "convex_hull: coordinates exceed 2^30");
}

Hull hull2(const std::vector<IntVec>& points) {
  Hull h;
  h.dim = 2;
  h.vertices = convex_hull_2d(points);
  require(h.vertices.size() >= 3, ErrorKind::Degenerate, "convex_hull: points are collinear");
  const int n = static_cast<int>(h.vertices.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = h.vertices[i];
    const auto& b = h.vertices[(i + 1) % n];
    IntVec normal{b[1] - a[1], a[0] - b[0]};  // outward for counter-clockwise order
    normal = primitive_split(normal).primitive;
    const auto offset = static_cast<std::int64_t>(dot128(normal, a));
    h.facets.push_back({normal, offset, {i, (i + 1) % n}});
  }
  return h;
}

struct Tri {
  std::array<int, 3> v;  // counter-clockwise from outside
  bool alive = true;
};

Hull hull3(const std::vector<IntVec>& raw) {
  std::vector<IntVec> pts = raw;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());

  // Initial tetrahedron.
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i) i1 = i;
  for (int i = 1; i < n && i2 < 0; ++i) {
    const auto nn = normal3(pts[0], pts[i1], pts[i]);
    if (nn[0] != 0 || nn[1] != 0 || nn[2] != 0) i2 = i;
  }
  require(i1 > 0 && i2 > 0, ErrorKind::Degenerate, "convex_hull: points are collinear");
  for (int i = 1; i < n && i3 < 0; ++i)
    if (side3(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  require(i3 > 0, ErrorKind::Degenerate, "convex_hull: points are coplanar");

  std::vector<Tri> tris;
  auto add = [&](int a, int b, int c, int inside) {
    if (side3(pts[a], pts[b], pts[c], pts[inside]) > 0) std::swap(b, c);
    tris.push_back({{a, b, c}});
  };
  const std::array<int, 4> t{0, i1, i2, i3};
  add(t[0], t[1], t[2], t[3]);
  add(t[0], t[1], t[3], t[2]);
  add(t[0], t[2], t[3], t[1]);
  add(t[1], t[2], t[3], t[0]);

  for (int p = 0; p < n; ++p) {
    if (p == t[0] || p == t[1] || p == t[2] || p == t[3]) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(tris.size()); ++f) {
      if (!tris[f].alive) continue;
      const auto& v = tris[f].v;
      if (side3(pts[v[0]], pts[v[1]], pts[v[2]], pts[p]) > 0) visible.push_back(f);
    }
    if (visible.empty()) continue;
    // Directed edges of visible faces; horizon edges have no reversed twin.
    std::set<std::pair<int, int>> edges;
    for (int f : visible) {
      const auto& v = tris[f].v;
      for (int k = 0; k < 3; ++k) edges.insert({v[k], v[(k + 1) % 3]});
      tris[f].alive = false;
    }
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) tris.push_back({{a, b, p}});
  }

  // Group triangles by supporting plane.
  std::map<std::pair<IntVec, std::int64_t>, std::set<int>> planes;
  for (const auto& tr : tris) {
    if (!tr.alive) continue;
    const auto nn = normal3(pts[tr.v[0]], pts[tr.v[1]], pts[tr.v[2]]);
    // |coordinates| < 2^30, so every cross-product entry fits in 63 bits.
    IntVec normal{static_cast<std::int64_t>(nn[0]), static_cast<std::int64_t>(nn[1]),
                  static_cast<std::int64_t>(nn[2])};
    normal = primitive_split(normal).primitive;
    const auto offset = static_cast<std::int64_t>(dot128(normal, pts[tr.v[0]]));
    auto& s = planes[{normal, offset}];
    s.insert(tr.v.begin(), tr.v.end());
  }

  Hull h;
  h.dim = 3;
  std::map<IntVec, int> index;
  auto vertex_id = [&](const IntVec& x) {
    auto [it, inserted] = index.try_emplace(x, static_cast<int>(h.vertices.size()));
    if (inserted) h.vertices.push_back(x);
    return it->second;
  };
  for (const auto& [key, members] : planes) {
    const auto& [normal, offset] = key;
    // Project by dropping the coordinate with the largest |normal| component.
    int drop = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(normal[j]) > std::abs(normal[drop])) drop = j;
    std::map<IntVec, IntVec> lift;
    std::vector<IntVec> flat;
    for (int m : members) {
      IntVec q;
      for (int j = 0; j < 3; ++j)
        if (j != drop) q.push_back(pts[m][j]);
      lift[q] = pts[m];
      flat.push_back(q);
    }
    auto poly = convex_hull_2d(flat);
    // Projection flips orientation when the dropped axis has a negative
    // component (or drop == 1, which swaps the cyclic order of the axes).
    const bool flip = (normal[drop] < 0) != (drop == 1);
    if (flip) std::reverse(poly.begin(), poly.end());
    HullFacet facet{normal, offset, {}};
    for (const auto& q : poly) facet.vertices.push_back(vertex_id(lift[q]));
    h.facets.push_back(std::move(facet));
  }
  return h;
}

}  // namespace

std::vector<IntVec> convex_hull_2d(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IntVec> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

Hull convex_hull(const std::vector<IntVec>& points) {
  require(!points.empty(), ErrorKind::Degenerate, "convex_hull: no points");
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    require(p.size() == d, ErrorKind::DimensionMismatch, "convex_hull: mixed dimensions");
  check_range(points);
  if (d == 2) return hull2(points);
  if (d == 3) return hull3(points);
  throw Error(ErrorKind::Unsupported, "convex_hull: only d = 2 or 3");
}

std::size_t Hull::edge_count() const {
  if (dim == 2) return facets.size();
  std::size_t total = 0;
  for (const auto& f : facets) total += f.vertices.size();
  return total / 2;
}

bool Hull::contains(const IntVec& x) const {
  for (const auto& f : facets)
    if (dot128(f.normal, x) > f.offset) return false;
  return true;
}

Polytope<Rational> triangulate(const Hull& hull) {
  Polytope<Rational> p;
  p.dim = hull.dim;
  auto rat = [](const IntVec& v) { return RatVec(v.begin(), v.end()); };
  const int apex = 0;
  for (const auto& f : hull.facets) {
    if (std::find(f.vertices.begin(), f.vertices.end(), apex) != f.vertices.end()) continue;
    if (hull.dim == 2) {
      p.simplices.push_back({rat(hull.vertices[apex]), rat(hull.vertices[f.vertices[0]]),
                             rat(hull.vertices[f.vertices[1]])});
      continue;
    }
    for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i)
      p.simplices.push_back({rat(hull.vertices[apex]), rat(hull.vertices[f.vertices[0]]),
                             rat(hull.vertices[f.vertices[i]]),
                             rat(hull.vertices[f.vertices[i + 1]])});
  }
  return p;
}

}  // namespace zonoshape
