#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "zonoshape/cone.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

using namespace zonoshape;

namespace {

double polygon_area_at_height_one(const PolyhedralCone& c) {
  // Generators of a circular approximation are listed in angular order.
  double area = 0.0;
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& a = g[i];
    const auto& b = g[(i + 1) % g.size()];
    const double ax = double(a[0]) / a[2], ay = double(a[1]) / a[2];
    const double bx = double(b[0]) / b[2], by = double(b[1]) / b[2];
    area += ax * by - ay * bx;
  }
  return std::abs(area) / 2.0;
}

// Membership by solving for nonnegative coefficients in some simplicial piece.
int pieces_containing(const PolyhedralCone& c, const RealVec& x) {
  int hits = 0;
  const int d = c.dimension();
  for (const auto& s : c.simplices()) {
    Eigen::MatrixXd w(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) w(i, j) = double(c.generators()[s[j]][i]);
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(x.data(), d);
    Eigen::VectorXd coef = w.fullPivLu().solve(rhs);
    if ((coef.array() > 1e-12).all()) ++hits;
  }
  return hits;
}

}  // namespace

TEST(Cone, ContainsExamples) {
  auto o = orthant(2);
  EXPECT_TRUE(contains(o, std::vector<std::int64_t>{1, 1}));
  EXPECT_FALSE(contains(o, std::vector<std::int64_t>{1, -1}));
  auto w = PolyhedralCone::from_generators({{1, 0}, {1, 2}});
  EXPECT_TRUE(contains(w, std::vector<std::int64_t>{2, 1}));
  EXPECT_FALSE(contains(w, std::vector<std::int64_t>{1, 3}));
  EXPECT_THROW(contains(w, std::vector<std::int64_t>{1, 1, 1}), Error);
}

TEST(Cone, DualContainsExamples) {
  auto o = orthant(2);
  EXPECT_TRUE(dual_contains(o, RealVec{1, 1}));
  EXPECT_FALSE(dual_contains(o, RealVec{1, 0}));
  auto w = PolyhedralCone::from_generators({{1, 0}, {1, 2}});
  EXPECT_FALSE(dual_contains(w, RealVec{0, 1}));
}

TEST(Cone, LaplaceOrthant) {
  auto o = orthant(2);
  EXPECT_NEAR(laplace(o, RealVec{1, 1}).value, 1.0, 1e-15);
  auto half = laplace(o, RealVec{0.5, 0.5});
  EXPECT_NEAR(half.value, 4.0, 1e-14);
  auto one = laplace(o, RealVec{1, 1});
  EXPECT_NEAR(one.gradient[0], -1.0, 1e-14);
  EXPECT_NEAR(one.gradient[1], -1.0, 1e-14);
  EXPECT_NEAR(one.hessian(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(one.hessian(0, 1), 1.0, 1e-14);
  EXPECT_EQ(laplace_exact(o, RatVec{Rational(1, 2), Rational(1, 2)}), Rational(4));
}

TEST(Cone, LaplaceErrors) {
  auto o = orthant(2);
  try {
    laplace(o, RealVec{1, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Divergence);
  }
  try {
    laplace(o, RealVec{1, 1e-12});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Conditioning);
  }
}

TEST(Cone, LaplaceHomogeneityAndFiniteDifferences) {
  SplitMix64 rng(3);
  auto c = regular_cone_approx(std::numbers::pi / 5, 7);
  for (int trial = 0; trial < 20; ++trial) {
    RealVec v{0.3 * (rng.uniform() - 0.5), 0.3 * (rng.uniform() - 0.5), 1.0 + rng.uniform()};
    ASSERT_TRUE(dual_contains(c, v));
    auto base = laplace(c, v);
    const double beta = 0.5 + 2 * rng.uniform();
    RealVec bv{beta * v[0], beta * v[1], beta * v[2]};
    EXPECT_NEAR(laplace(c, bv).value / (std::pow(beta, -3) * base.value), 1.0, 1e-12);
    const double h = 1e-5;
    for (int j = 0; j < 3; ++j) {
      RealVec p = v, m = v;
      p[j] += h;
      m[j] -= h;
      auto lp = laplace(c, p), lm = laplace(c, m);
      const double fd = (lp.value - lm.value) / (2 * h);
      EXPECT_NEAR(fd / base.gradient[j], 1.0, 1e-6);
      for (int k = 0; k < 3; ++k) {
        const double fdh = (lp.gradient[k] - lm.gradient[k]) / (2 * h);
        EXPECT_NEAR(fdh, base.hessian(j, k), 1e-6 * base.hessian.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST(Cone, LaplaceIndependentOfGeneratorOrder) {
  auto a = PolyhedralCone::from_generators({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {2, 1, 1}});
  auto b = PolyhedralCone::from_generators({{1, 1, 1}, {2, 1, 1}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  RatVec v{Rational(1, 2), Rational(2, 3), Rational(1)};
  EXPECT_EQ(laplace_exact(a, v), laplace_exact(b, v));
  EXPECT_EQ(laplace_exact(a, v), laplace_exact(orthant(3), v));
}

TEST(Cone, TriangulateSimplicial) {
  EXPECT_EQ(orthant(3).simplices().size(), 1u);
}

TEST(Cone, TriangulateOrthantWithInteriorGenerator) {
  auto c = PolyhedralCone::from_generators({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  EXPECT_GE(c.simplices().size(), 3u);
  EXPECT_EQ(c.facet_normals().size(), 3u);
  // Unit-height truncations: simplex volume |det|/d! summed equals the orthant's.
  double total = 0;
  for (double v : c.simplex_volumes()) total += v;
  // Each piece truncated at x1+x2+x3 <= 1 has volume |det| / (6 * prod(1 . w_i)).
  double truncated = 0;
  for (std::size_t s = 0; s < c.simplices().size(); ++s) {
    double prod = 1;
    for (int gi : c.simplices()[s]) {
      const auto& g = c.generators()[gi];
      prod *= double(g[0] + g[1] + g[2]);
    }
    truncated += c.simplex_volumes()[s] / (6 * prod);
  }
  EXPECT_NEAR(truncated, 1.0 / 6.0, 1e-15);
  EXPECT_GT(total, 0);
}

TEST(Cone, OctagonFanIsPartition) {
  auto c = regular_cone_approx(std::numbers::pi / 4, 8);
  EXPECT_EQ(c.simplices().size(), 6u);
  EXPECT_EQ(c.facet_normals().size(), 8u);
  SplitMix64 rng(11);
  int tested = 0;
  while (tested < 2000) {
    RealVec x{2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 1.0};
    const bool in = contains_strictly(c, x);
    EXPECT_EQ(pieces_containing(c, x), in ? 1 : 0);
    ++tested;
  }
}

TEST(Cone, RegularApproximation) {
  auto sq = regular_cone_approx(std::numbers::pi / 4, 4);
  ASSERT_EQ(sq.generators().size(), 4u);
  EXPECT_EQ(sq.generators()[0], (IntVec{1, 0, 1}));
  EXPECT_EQ(sq.generators()[1], (IntVec{0, 1, 1}));
  auto fine = regular_cone_approx(std::numbers::pi / 4, 1024);
  EXPECT_NEAR(polygon_area_at_height_one(fine), std::numbers::pi, 1e-4);
  EXPECT_THROW(regular_cone_approx(std::numbers::pi / 4, 2), Error);
  for (const auto& g : fine.generators()) EXPECT_TRUE(is_primitive(g));
}

TEST(Cone, RejectsDegenerateInput) {
  EXPECT_THROW(PolyhedralCone::from_generators({{1, 0}, {2, 0}}), Error);
  EXPECT_THROW(PolyhedralCone::from_generators({{1, 0}, {-1, 0}, {0, 1}}), Error);
  EXPECT_THROW(PolyhedralCone::from_generators({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), Error);
}

TEST(Cone, DualityProperty) {
  auto c = PolyhedralCone::from_generators({{1, 0}, {1, 2}});
  RealVec v{2, -0.5};
  ASSERT_TRUE(dual_contains(c, v));
  SplitMix64 rng(5);
  int checked = 0;
  while (checked < 1000) {
    IntVec x{static_cast<std::int64_t>(rng.next() % 41) - 20,
             static_cast<std::int64_t>(rng.next() % 41) - 20};
    if ((x[0] == 0 && x[1] == 0) || !contains(c, x)) continue;
    EXPECT_GT(dot(v, x), 0.0);
    ++checked;
  }
}

TEST(Cone, JsonRoundTrip) {
  auto c = cone_from_json(R"({"d": 2, "generators": [[1,0],[2,4]]})");
  EXPECT_EQ(c.generators()[1], (IntVec{1, 2}));
  auto again = cone_from_json(cone_to_json(c));
  EXPECT_EQ(again.generators(), c.generators());
  EXPECT_THROW(cone_from_json("{"), Error);
}
