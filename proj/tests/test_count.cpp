#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zonoshape/count.hpp"
#include "zonoshape/numeric.hpp"

using namespace zonoshape;

TEST(Count, SpotValues) {
  auto o = orthant(2);
  EXPECT_EQ(count_partitions(o, {1, 1}, true).count, 2);
  EXPECT_EQ(count_partitions(o, {2, 2}, true).count, 5);
  EXPECT_EQ(count_partitions(o, {2, 2}, false).count, 9);
  EXPECT_EQ(count_partitions(o, {1, 0}, true).count, 1);
  EXPECT_EQ(count_partitions(o, {0, 0}, true).count, 1);
  EXPECT_THROW(count_partitions(o, {1, -1}, true), Error);
}

TEST(Count, EnumerateExamples) {
  auto o = orthant(2);
  auto one = enumerate_partitions(o, {1, 1}, true);
  ASSERT_EQ(one.size(), 2u);
  auto two = enumerate_partitions(o, {2, 2}, true);
  ASSERT_EQ(two.size(), 5u);
  GeneratorMultiset a{{{{1, 0}, 2}, {{0, 1}, 2}}};
  GeneratorMultiset b{{{{2, 1}, 1}, {{0, 1}, 1}}};
  EXPECT_NE(std::find(two.begin(), two.end(), a), two.end());
  EXPECT_NE(std::find(two.begin(), two.end(), b), two.end());
  for (const auto& w : two) EXPECT_EQ(endpoint(w, 2), (IntVec{2, 2}));
  auto single = enumerate_partitions(o, {1, 0}, true);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].entries.at({1, 0}), 1);
  EXPECT_THROW(enumerate_partitions(o, {6, 6}, false, 10), BudgetError);
}

TEST(Count, Canonicalize) {
  auto w = canonicalize({{2, 2}});
  EXPECT_EQ(w.entries.at({1, 1}), 2);
  EXPECT_EQ(endpoint(w, 2), (IntVec{2, 2}));
  auto same = canonicalize({{1, 0}, {0, 1}});
  EXPECT_EQ(same.entries.size(), 2u);
  EXPECT_EQ(canonicalize({{4, 6}}).entries.at({2, 3}), 2);
  EXPECT_THROW(canonicalize({{0, 0}}), Error);
  // Idempotent on the expanded list.
  std::vector<IntVec> expanded;
  for (const auto& [x, m] : w.entries)
    for (int i = 0; i < m; ++i) expanded.push_back(x);
  EXPECT_EQ(canonicalize(expanded), w);
}

TEST(Count, DpMatchesBruteForce) {
  auto o = orthant(2);
  auto wedge = PolyhedralCone::from_generators({{1, 0}, {1, 2}});
  for (const auto* c : {&o, &wedge})
    for (std::int64_t x = 0; x <= 4; ++x)
      for (std::int64_t y = 0; y <= 4; ++y) {
        IntVec k{x, y};
        if (!contains(*c, k)) continue;
        for (bool strict : {true, false})
          EXPECT_EQ(count_partitions(*c, k, strict).count,
                    oracle::brute_force_partition_count(*c, k, strict))
              << x << "," << y << " strict=" << strict;
      }
}

TEST(Count, EnumerationMatchesCount) {
  auto wedge = PolyhedralCone::from_generators({{1, 0}, {1, 2}});
  for (bool strict : {true, false}) {
    auto list = enumerate_partitions(wedge, {4, 5}, strict);
    EXPECT_EQ(BigInt(list.size()), count_partitions(wedge, {4, 5}, strict).count);
    std::sort(list.begin(), list.end(),
              [](const auto& a, const auto& b) { return a.entries < b.entries; });
    EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
  }
}

TEST(Count, StrictEqualsCanonicalZonotopes) {
  // Non-strict partitions collapse under canonicalize onto strict ones.
  auto o = orthant(2);
  std::set<std::map<IntVec, std::int64_t>> zonotopes;
  for (const auto& w : enumerate_partitions(o, {3, 2}, false)) {
    std::vector<IntVec> vs;
    for (const auto& [x, m] : w.entries)
      for (int i = 0; i < m; ++i) vs.push_back(x);
    zonotopes.insert(canonicalize(vs).entries);
  }
  EXPECT_EQ(BigInt(zonotopes.size()), count_partitions(o, {3, 2}, true).count);
}

TEST(Count, Monotonicity) {
  auto o = orthant(2);
  auto counts = [&](IntVec k) { return count_partitions(o, k, true).count; };
  for (std::int64_t x = 0; x <= 4; ++x)
    for (std::int64_t y = 0; y <= 4; ++y)
      for (std::int64_t a = 0; a <= x; ++a)
        for (std::int64_t b = 0; b <= y; ++b) EXPECT_GE(counts({x, y}), counts({a, b}));
}

TEST(Count, MultiplesAgreeWithSingleCounts) {
  auto o = orthant(3);
  auto seq = count_multiples(o, {1, 1, 1}, 3, true);
  for (int m = 0; m <= 3; ++m)
    EXPECT_EQ(seq[m], count_partitions(o, {m, m, m}, true).count);
}

TEST(Count, GrowthConstants) {
  EXPECT_NEAR(partition_constant(2), 1.6367257965, 1e-9);
  auto seq = growth_sequence(orthant(2), {1, 1}, 8);
  EXPECT_NEAR(seq.rows[0].a_n, std::log(2.0), 1e-15);
  EXPECT_NEAR(seq.limit, partition_constant(2) * std::cbrt(4.5), 1e-12);
  EXPECT_NEAR(seq.identity_limit, seq.limit, 1e-9);
}

TEST(Count, StateBudget) {
  EXPECT_THROW(count_partitions(orthant(2), {100, 100}, true, 1000), BudgetError);
}
