#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "zonoshape/count.hpp"
#include "zonoshape/gibbs.hpp"
#include "zonoshape/numeric.hpp"

using namespace zonoshape;

namespace {

PolyhedralCone orthant2() { return PolyhedralCone::from_generators({{1, 0}, {0, 1}}); }

}  // namespace

TEST(Gibbs, BetaAndSupport) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 1000);
  EXPECT_NEAR(m.beta, std::cbrt(zeta(3) / zeta(2) / 1000.0), 1e-12);
  EXPECT_NEAR(m.u[0], 1.0, 1e-8);
  EXPECT_NEAR(m.u[1], 1.0, 1e-8);
  EXPECT_LT(m.tail_bound, kTailTolerance);
  for (std::size_t i = 0; i < m.keys.size(); ++i) {
    ASSERT_EQ(gcd_of(m.keys[i]), 1);
    ASSERT_LE(-m.log_weight[i], m.t_max + 1e-9);
  }
  EXPECT_TRUE(std::is_sorted(m.keys.begin(), m.keys.end()));
}

TEST(Gibbs, SameSeedSameSample) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 200);
  EXPECT_EQ(sample(m, 17), sample(m, 17));
  EXPECT_FALSE(sample(m, 17) == sample(m, 18));
  const auto w = sample(m, 5);
  const auto s = sample_summary(m, 5);
  EXPECT_EQ(endpoint(w, 2), s.endpoint);
  EXPECT_EQ(static_cast<std::int64_t>(w.distinct()), s.generators);
}

TEST(Gibbs, GeometricMarginal) {
  // A single-key support: check P[omega >= i] = q^i empirically.
  auto m = make_gibbs_model(orthant2(), {1, 1}, 50);
  m.keys = {{1, 0}};
  m.weight = {0.6};
  m.log_weight = {std::log(0.6)};
  std::map<std::int64_t, int> freq;
  const int reps = 40000;
  for (int r = 0; r < reps; ++r) {
    const auto s = sample_summary(m, 1000 + r);
    ++freq[s.endpoint[0]];
  }
  for (int i = 0; i < 4; ++i) {
    const double p = 0.4 * std::pow(0.6, i);
    EXPECT_NEAR(freq[i] / double(reps), p, 4 * std::sqrt(p * (1 - p) / reps)) << i;
  }
}

TEST(Gibbs, MeanMatchesTarget) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 500);
  const auto mo = moments(m, 400, 1);
  for (int j = 0; j < 2; ++j)
    EXPECT_NEAR(mo.mean[j], mo.mean_ref[j], 4 * mo.mean_se[j] + 0.05 * mo.mean_ref[j]);
  EXPECT_NEAR(mo.gen_count_mean / mo.gen_ref, 1.0, 0.1);
}

TEST(Gibbs, HyperplaneCounts) {
  GeneratorMultiset w;
  w.entries = {{{1, 0, 0}, 1}, {{0, 1, 0}, 2}, {{1, 1, 0}, 1}, {{0, 0, 1}, 1}, {{1, 2, 3}, 1}};
  EXPECT_EQ(generators_in_hyperplane(w, {0, 0, 1}), 3);
  EXPECT_EQ(max_generators_in_hyperplane(w, 3), 3);
  EXPECT_EQ(max_generators_in_hyperplane(w, 2), 1);
}

TEST(Gibbs, TypicalAtModerateN) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 2000);
  int typical = 0;
  for (int r = 0; r < 20; ++r) typical += is_epsilon_typical(sample(m, 100 + r), m, 0.2);
  EXPECT_GE(typical, 16);
}

TEST(Gibbs, UniformLandsOnTarget) {
  const auto m = make_gibbs_model(orthant2(), {2, 2}, 1);
  const UniformSampler draw(m);
  for (int r = 0; r < 20; ++r) {
    const auto s = draw(100000, r);
    EXPECT_EQ(endpoint(s.w, 2), (IntVec{2, 2}));
  }
}

TEST(Gibbs, UniformTimesOut) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 40);
  EXPECT_THROW(sample_uniform(m, 1, 3), TimeoutError);
}

TEST(Gibbs, AcceptanceMatchesExactProbability) {
  // P_n[X = n k] = p(C, n k) exp(-n beta u . k) / Z exactly.
  const auto cone = orthant2();
  const IntVec k{1, 1};
  const std::int64_t n = 6;
  const auto m = make_gibbs_model(cone, k, n);
  const auto lz = log_partition(m);
  const double p = static_cast<double>(count_multiples(cone, k, n, true).back());
  const double exact = std::exp(std::log(p) - n * m.beta * (m.u[0] + m.u[1]) - lz.value);
  const UniformSampler draw(m);
  // Rejection attempts are geometric with success probability `exact`.
  double attempts = 0;
  const int accepted = 300;
  for (int r = 0; r < accepted; ++r) attempts += static_cast<double>(draw(1'000'000, 77 + r).attempts);
  const double est = accepted / attempts;
  EXPECT_NEAR(est, exact, 4 * exact / std::sqrt(double(accepted)));
}

TEST(Gibbs, LogPartitionNearReference) {
  const auto m = make_gibbs_model(orthant2(), {1, 1}, 10000);
  const auto lz = log_partition(m);
  EXPECT_NEAR(lz.value / lz.reference, 1.0, 0.05);
}

TEST(Gibbs, RejectsBadArguments) {
  EXPECT_THROW(make_gibbs_model(orthant2(), {1, 1}, 0), Error);
  EXPECT_THROW(make_gibbs_model(orthant2(), {1, 1}, 100, 2.0), Error);  // tail too heavy
}
