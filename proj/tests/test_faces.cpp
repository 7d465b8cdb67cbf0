#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zonoshape/faces.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

using namespace zonoshape;

namespace {

GeneratorMultiset multiset(const std::vector<IntVec>& vs) { return canonicalize(vs); }

// Random multiset of m nonzero vectors with entries in [-3, 3] spanning R^d.
GeneratorMultiset random_multiset(SplitMix64& rng, int d, int m) {
  for (;;) {
    std::vector<IntVec> vs;
    for (int i = 0; i < m; ++i) {
      IntVec v(d);
      do {
        for (auto& c : v) c = static_cast<std::int64_t>(rng.next() % 7) - 3;
      } while (gcd_of(v) == 0);
      vs.push_back(v);
    }
    auto w = canonicalize(vs);
    std::vector<IntVec> keys;
    for (const auto& [x, k] : w.entries) keys.push_back(x);
    if (w.distinct() <= 10 && rank(keys) == d) return w;
  }
}

std::vector<IntVec> moment_curve(int m) {
  std::vector<IntVec> vs;
  for (int t = 1; t <= m; ++t) vs.push_back({1, t, t * t});
  return vs;
}

}  // namespace

TEST(Faces, PlanarExamples) {
  const auto square = multiset({{1, 0}, {0, 1}});
  EXPECT_EQ(face_counts(square, 2).f, (std::vector<std::int64_t>{4, 4}));
  EXPECT_EQ(hull_oracle(square, 2).f, (std::vector<std::int64_t>{4, 4}));
  const auto hex = multiset({{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(face_counts(hex, 2).f[0], 6);
  EXPECT_EQ(hull_oracle(hex, 2).f[0], 6);
  // Parallel generators merge into one segment direction.
  const auto par = multiset({{1, 0}, {2, 0}, {0, 1}, {-1, 0}});
  EXPECT_EQ(face_counts(par, 2), hull_oracle(par, 2));
}

TEST(Faces, Parallelepiped) {
  const auto w = multiset({{1, 0, 0}, {0, 1, 0}, {1, 1, 3}});
  const auto fc = face_counts(w, 3);
  EXPECT_EQ(fc.f, (std::vector<std::int64_t>{8, 12, 6}));
  EXPECT_EQ(fc.towers, 48);
  EXPECT_EQ(hull_oracle(w, 3), fc);
}

TEST(Faces, GenericChamberCount) {
  for (int m = 3; m <= 8; ++m) {
    const auto w = multiset(moment_curve(m));
    const auto fc = face_counts(w, 3);
    EXPECT_EQ(fc.f[0], m * m - m + 2) << m;
    EXPECT_EQ(hull_oracle(w, 3), fc) << m;
    EXPECT_EQ(BigInt(fc.f[0]), buck_generic(m, 3, 3));
    EXPECT_EQ(BigInt(fc.f[1]), buck_generic(m, 3, 2));
    EXPECT_EQ(BigInt(fc.f[2]), buck_generic(m, 3, 1));
  }
}

TEST(Faces, ArrangementMatchesHullOracle) {
  SplitMix64 rng(2024);
  for (int inst = 0; inst < 200; ++inst) {
    const int d = 2 + inst % 2;
    const int m = d + static_cast<int>(rng.next() % (11 - d));
    const auto w = random_multiset(rng, d, m);
    const auto fc = face_counts(w, d);
    const auto ho = hull_oracle(w, d);
    ASSERT_EQ(fc, ho) << "instance " << inst;
    // Euler relation of the boundary complex.
    std::int64_t chi = 0;
    for (int i = 0; i < d; ++i) chi += (i % 2 ? -1 : 1) * fc.f[i];
    EXPECT_EQ(chi, d == 2 ? 0 : 2);
    EXPECT_EQ(fc.f[0] % 2, 0);
    EXPECT_GE(fc.f[0], d + 1);
    EXPECT_GE(fc.towers, fc.f[0] * d);
  }
}

TEST(Faces, SliceBoundsAndUpperBound) {
  SplitMix64 rng(77);
  for (int inst = 0; inst < 50; ++inst) {
    const auto w = random_multiset(rng, 3, 3 + static_cast<int>(rng.next() % 8));
    const auto fc = face_counts(w, 3);
    const auto& s = fc.slice;  // V, E, R of the affine slice
    ASSERT_EQ(s.size(), 3u);
    // k-cells of the central arrangement: f_{3-k}.
    for (int k = 1; k <= 3; ++k) {
      EXPECT_LE(s[k - 1], fc.f[3 - k]);
      EXPECT_LE(fc.f[3 - k], 2 * s[k - 1]);
    }
    std::int64_t lines = 0;
    for (const auto& [x, m] : w.entries) (void)m, ++lines;
    for (int i = 1; i <= 3; ++i) EXPECT_LE(BigInt(fc.f[3 - i]), buck_generic(lines, 3, i));
  }
}

TEST(Faces, ProbeOracleAgrees) {
  const std::vector<IntVec> normals{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, -1, 2}};
  const auto arr = central_arrangement_3d(normals);
  EXPECT_EQ(static_cast<std::uint64_t>(arr.cells[3]), oracle::probe_chamber_count(normals, 400));
}

TEST(Faces, BuckFormulas) {
  for (int m = 2; m <= 12; ++m) EXPECT_EQ(buck_generic(m, 2, 2), BigInt(2 * m));
  for (int m = 3; m <= 12; ++m) {
    EXPECT_EQ(buck_generic(m, 3, 3), BigInt(m * m - m + 2));
    EXPECT_EQ(buck_generic(m, 3, 1), BigInt(m * (m - 1)));
  }
  EXPECT_EQ(buck_affine(4, 2, 2), BigInt(11));  // 1 + 4 + 6 regions of 4 generic lines
  EXPECT_THROW(buck_generic(2, 3, 1), Error);
}

TEST(Faces, ArFamily) {
  const auto a1 = a_r_cells(1);
  EXPECT_EQ(a1.planes, 3);
  EXPECT_EQ(a1.cells[3], 8);
  const auto a2 = a_r_cells(2);
  EXPECT_EQ(a2.planes, 13);
  const auto a4 = a_r_cells(4);
  const double growth = std::log(double(a4.towers) / double(a2.towers)) / std::log(2.0);
  EXPECT_GE(growth, 4.5);
  EXPECT_LE(growth, 7.5);
  EXPECT_THROW(a_r_cells(6), BudgetError);
}

TEST(Faces, RejectsDegenerate) {
  EXPECT_THROW(face_counts(multiset({{1, 0, 0}, {0, 1, 0}}), 3), Error);
  std::vector<IntVec> many;
  for (int i = 1; i <= 13; ++i) many.push_back({1, i});
  EXPECT_THROW(hull_oracle(multiset(many), 2), BudgetError);
}

TEST(Faces, PlanarVertexIdentityOnSamples) {
  const auto cone = orthant(2);
  FaceStatisticsConfig cfg{&cone, {1, 1}, {300}, 10, 3};
  const auto rows = face_statistics_experiment(cfg);
  EXPECT_EQ(rows.front().vertex_identity_hits, 10u);
  EXPECT_NEAR(rows.front().ratio_mean[0] * rows.front().scale, 2 * rows.front().generators_mean,
              1e-9);
}
