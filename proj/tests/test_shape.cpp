#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/shape.hpp"

using namespace zonoshape;

namespace {

CapSolution cap_of(const PolyhedralCone& c, const IntVec& k) {
  return solve_cap(c, RatVec(k.begin(), k.end()));
}

Rational R(int a, int b = 1) { return Rational(a, b); }

}  // namespace

TEST(Shape, BoundaryExamplesExact) {
  const auto cap2 = cap_of(orthant(2), {1, 1});
  EXPECT_EQ(zonoid_boundary_exact(cap2, {R(1, 2), R(-1, 2)}), (RatVec{R(3, 4), R(1, 4)}));
  EXPECT_EQ(zonoid_boundary_exact(cap2, {R(2), R(5)}), (RatVec{R(1), R(1)}));
  EXPECT_EQ(zonoid_boundary_exact(cap2, {R(-1), R(-3)}), (RatVec{R(0), R(0)}));
  // (2t - t^2, t^2) along v = (t, -(1-t)).
  for (int i = 1; i < 10; ++i) {
    const Rational t(i, 10);
    EXPECT_EQ(zonoid_boundary_exact(cap2, {t, t - 1}), (RatVec{2 * t - t * t, t * t}));
  }
  const auto cap3 = cap_of(orthant(3), {1, 1, 1});
  EXPECT_EQ(zonoid_boundary_exact(cap3, {R(1), R(-1), R(-1)}),
            (RatVec{R(1, 2), R(1, 8), R(1, 8)}));
  // (3tv - t^2 v - t v^2, t^2 v, t v^2) along (1, -(1-t)/t, -(1-v)/v).
  const Rational t(1, 3), v(3, 4);
  EXPECT_EQ(zonoid_boundary_exact(cap3, {R(1), -(1 - t) / t, -(1 - v) / v}),
            (RatVec{3 * t * v - t * t * v - t * v * v, t * t * v, t * v * v}));
}

TEST(Shape, SupportExamples) {
  const auto cap = cap_of(orthant(2), {1, 1});
  EXPECT_NEAR(zonoid_support(cap, {1, 0}), 1.0, 1e-12);
  EXPECT_NEAR(zonoid_support(cap, {-1, -2}), 0.0, 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(zonoid_support(cap, {r, -r}), 1 / (2 * std::sqrt(2.0)), 1e-12);
  for (const auto& v : direction_net(2, 64))
    EXPECT_NEAR(zonoid_support(cap, v), dot(v, zonoid_boundary(cap, v)), 1e-15);
}

TEST(Shape, FloatingPathMatchesExact) {
  const auto cap = cap_of(orthant(3), {1, 2, 3});
  const auto e = to_double(zonoid_boundary_exact(cap, {R(3), R(-1), R(-2)}));
  const auto f = zonoid_boundary(cap, {3, -1, -2});
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(f[j], e[j], 1e-12);
}

TEST(Shape, BoundaryAgainstMonteCarloOnWedge) {
  const auto wedge = PolyhedralCone::from_generators({{1, 0}, {1, 2}, {1, 1}});
  const auto cap = solve_cap(wedge, RealVec{3.0, 2.0});
  const RealVec v{-1.0, 0.7};
  const auto t = zonoid_boundary(cap, v);
  const auto mc = oracle::monte_carlo_zonoid_boundary(wedge, cap.u, cap.vol_unit, v, 2'000'000, 5);
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(t[j], mc[j], 0.01) << j;
  const auto full = zonoid_boundary(cap, {1.0, 0.1});
  EXPECT_NEAR(full[0], 3.0, 1e-9);
  EXPECT_NEAR(full[1], 2.0, 1e-9);
}

TEST(Shape, ContinuityAcrossDualBoundary) {
  const auto cap = cap_of(orthant(2), {1, 1});
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    const auto t = zonoid_boundary(cap, {1.0, -eps});
    EXPECT_NEAR(t[0], 1.0, 3 * eps);
    EXPECT_NEAR(t[1], 1.0, 3 * eps);
    const auto z = zonoid_boundary(cap, {-1.0, eps});
    EXPECT_NEAR(z[0], 0.0, 3 * eps);
    EXPECT_NEAR(z[1], 0.0, 3 * eps);
  }
}

TEST(Shape, BoundaryEquations) {
  const auto b2 = boundary_equation_check(2, 100);
  EXPECT_EQ(b2.checked, 200);
  EXPECT_LT(b2.max_residual, 1e-9);
  const auto b3 = boundary_equation_check(3, 10);
  EXPECT_GE(b3.checked, 100);
  EXPECT_GT(b3.skipped, 0);
  EXPECT_LT(b3.max_residual, 1e-9);
}

TEST(Shape, ZonotopeSupport) {
  GeneratorMultiset w;
  EXPECT_EQ(zonotope_support(w, RealVec{1, 0}), 0.0);
  w.entries = {{{1, 0}, 2}, {{0, 1}, 1}};
  EXPECT_EQ(zonotope_support(w, RealVec{1, 0}), 2.0);
  GeneratorMultiset z;
  z.entries = {{{1, 0}, 1}, {{1, 2}, 1}};
  EXPECT_EQ(zonotope_support(z, RatVec{R(2), R(-1)}), R(2));
  // Additive over multiset union.
  GeneratorMultiset u = w;
  for (const auto& [x, m] : z.entries) u.entries[x] += m;
  for (const auto& v : direction_net(2, 32))
    EXPECT_NEAR(zonotope_support(u, v), zonotope_support(w, v) + zonotope_support(z, v), 1e-12);
}

TEST(Shape, HausdorffOnNets) {
  const auto cap = cap_of(orthant(2), {1, 1});
  const auto net = direction_net(2, 4096);
  const auto a = zonoid_profile(cap, net);
  EXPECT_EQ(hausdorff(a, a), 0.0);
  auto b = a;
  const RealVec tau{0.3, -0.4};
  for (std::size_t i = 0; i < net.size(); ++i) b.values[i] += dot(net[i], tau);
  EXPECT_NEAR(hausdorff(a, b), 0.5, 0.5 * net_mesh(2, 4096));
  const auto c = zonoid_profile(cap, direction_net(2, 100));
  EXPECT_THROW(hausdorff(a, c), Error);
}

TEST(Shape, DirectionNetsAreUnit) {
  for (int d : {2, 3})
    for (const auto& v : direction_net(d, 500)) EXPECT_NEAR(dot(v, v), 1.0, 1e-12);
}

TEST(Shape, CubeZonoidSupport) {
  EXPECT_EQ(cube_zonoid_support(2, RatVec{R(1), R(0)}), R(1));
  EXPECT_EQ(cube_zonoid_support(2, RatVec{R(0), R(1)}), R(1));
  EXPECT_EQ(cube_zonoid_support(3, RatVec{R(1), R(0), R(0)}), R(1));
  const double r = 1 / std::sqrt(2.0);
  const double h = cube_zonoid_support(2, RealVec{r, r});
  EXPECT_NEAR(h, 3 * std::sqrt(2.0) / 4, 1e-12);
  EXPECT_NEAR(h, oracle::monte_carlo_cube_support(2, {r, r}, 1'000'000, 3), 1e-3);
  const RealVec w{0.3, -0.5, 0.81};
  EXPECT_NEAR(cube_zonoid_support(3, w), oracle::monte_carlo_cube_support(3, w, 1'000'000, 4),
              1e-3);
  for (const auto& v : direction_net(3, 50)) {
    const RealVec m{-v[0], -v[1], -v[2]};
    EXPECT_NEAR(cube_zonoid_support(3, v), cube_zonoid_support(3, m), 1e-12);
  }
}

TEST(Shape, MeanSupportApproachesLimit) {
  const auto cone = orthant(2);
  LimitShapeConfig cfg{&cone, {1, 1}, {2000}, 200, 9, 256};
  const auto rows = limit_shape_experiment(cfg);
  const auto& row = rows.front();
  EXPECT_NEAR(row.mean_support, row.limit_support,
              3 * row.support_se + std::pow(2000.0, -1.0 / 3));
}

TEST(Shape, ExperimentIsReproducible) {
  const auto cone = orthant(2);
  LimitShapeConfig cfg{&cone, {1, 1}, {100}, 1, 42};
  const auto a = limit_shape_experiment(cfg);
  const auto b = limit_shape_experiment(cfg);
  EXPECT_EQ(a.front().median, b.front().median);
  EXPECT_GT(a.front().median, 0.0);
}
