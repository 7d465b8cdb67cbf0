#include <gtest/gtest.h>

#include "zonoshape/hull.hpp"
#include "zonoshape/rng.hpp"

using namespace zonoshape;

TEST(Hull, Square) {
  auto h = convex_hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0}});
  EXPECT_EQ(h.vertices.size(), 4u);
  EXPECT_EQ(h.edge_count(), 4u);
  EXPECT_TRUE(h.contains({1, 1}));
  EXPECT_FALSE(h.contains({2, 0}));
}

TEST(Hull, CollinearPointsAreDropped) {
  auto h = convex_hull({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  EXPECT_EQ(h.vertices.size(), 4u);
}

TEST(Hull, CubeWithFaceAndEdgePoints) {
  std::vector<IntVec> pts;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (int z = 0; z <= 2; ++z) pts.push_back({x, y, z});
  auto h = convex_hull(pts);
  EXPECT_EQ(h.vertices.size(), 8u);
  EXPECT_EQ(h.edge_count(), 12u);
  EXPECT_EQ(h.facets.size(), 6u);
  EXPECT_EQ(volume(triangulate(h)), Rational(8));
  for (const auto& f : h.facets) EXPECT_EQ(f.vertices.size(), 4u);
}

TEST(Hull, EulerRelationOnRandomPoints) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<IntVec> pts;
    for (int i = 0; i < 30; ++i)
      pts.push_back({static_cast<std::int64_t>(rng.next() % 7), static_cast<std::int64_t>(rng.next() % 7),
                     static_cast<std::int64_t>(rng.next() % 7)});
    auto h = convex_hull(pts);
    const long v = h.vertices.size(), e = h.edge_count(), f = h.facets.size();
    EXPECT_EQ(v - e + f, 2);
    for (const auto& p : pts) EXPECT_TRUE(h.contains(p));
    // Facet polygons are oriented counter-clockwise seen from outside.
    for (const auto& fc : h.facets) {
      const auto& a = h.vertices[fc.vertices[0]];
      const auto& b = h.vertices[fc.vertices[1]];
      const auto& c = h.vertices[fc.vertices[2]];
      IntVec u{b[0] - a[0], b[1] - a[1], b[2] - a[2]}, w{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
      IntVec n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
      EXPECT_GT(n[0] * fc.normal[0] + n[1] * fc.normal[1] + n[2] * fc.normal[2], 0);
    }
  }
}

TEST(Hull, RejectsFlatInput) {
  EXPECT_THROW(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), Error);
}
