#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"
#include "zonoshape/cap.hpp"
#include "zonoshape/count.hpp"
#include "zonoshape/faces.hpp"
#include "zonoshape/gibbs.hpp"
#include "zonoshape/latt.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"
#include "zonoshape/shape.hpp"

namespace zonoshape::acceptance {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string num(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

PolyhedralCone wedge() { return PolyhedralCone::from_generators({{1, 0}, {1, 2}}); }

// 1. Exact caps of the orthants.
void orthant_exactness(Outcome& o) {
  const auto s2 = solve_cap(orthant(2), RatVec{1, 1});
  o.check(s2.u_exact && *s2.u_exact == RatVec{Rational(1, 2), Rational(1, 2)}, "u = (1/2, 1/2)");
  const double q2 = std::cbrt(4.5);
  o.check(std::abs(s2.q - q2) < 1e-12, "q = (9/2)^(1/3)");
  const auto s3 = solve_cap(orthant(3), RatVec{1, 1, 1});
  const Rational third(1, 3);
  o.check(s3.u_exact && *s3.u_exact == RatVec{third, third, third}, "u = (1/3, 1/3, 1/3)");
  const double q3 = std::pow(64.0 / 6.0, 0.25);
  o.check(std::abs(s3.q - q3) < 1e-12, "q = (64/6)^(1/4)");
  o.detail << "d=2 q=" << num(s2.q, 15) << " err=" << num(std::abs(s2.q - q2), 2)
           << "; d=3 q=" << num(s3.q, 15) << " err=" << num(std::abs(s3.q - q3), 2);
}

// 2. Polyhedral approximations of the circular cone x^2 + y^2 <= z^2.
void circular_convergence(Outcome& o) {
  // Target as a decimal; the closed form (64 pi / 81)^{1/4} is 1.255195.
  const double target = 1.255294;
  const double closed_form = std::pow(64.0 * std::numbers::pi / 81.0, 0.25);
  double prev_err = INFINITY;
  for (int facets : {64, 128, 256, 512, 1024}) {
    const auto c = regular_cone_approx(std::numbers::pi / 4, facets);
    const double q = q_value(c, RealVec{0, 0, 1});
    const double err = std::abs(q - target);
    o.detail << facets << ":" << num(q, 8) << " ";
    o.check(err < prev_err, "monotone at " + std::to_string(facets));
    prev_err = err;
  }
  o.check(prev_err < 0.01, "|error| < 0.01 at 1024");
  o.detail << "target " << num(target, 7) << " (closed form " << num(closed_form, 7)
           << ") err@1024=" << num(prev_err, 3);
}

// 3. Closed forms of the limit-shape boundary.
void boundary_closed_forms(Outcome& o) {
  const auto b2 = boundary_equation_check(2, 100);
  const auto b3 = boundary_equation_check(3, 10);
  o.check(b2.max_residual < 1e-9, "d=2 residual");
  o.check(b3.max_residual < 1e-9, "d=3 residual");
  o.check(b3.checked >= 100, "d=3 grid of 100 points");
  o.detail << "d=2 checked=" << b2.checked << " max=" << num(b2.max_residual, 3)
           << "; d=3 checked=" << b3.checked << " skipped=" << b3.skipped
           << " max=" << num(b3.max_residual, 3);
}

// 4. Dynamic programming against brute-force enumeration.
void counting_oracle(Outcome& o) {
  int compared = 0;
  auto sweep = [&](const PolyhedralCone& cone, int d, int bound) {
    IntVec k(d, 0);
    for (;;) {
      if (gcd_of(k) != 0 && contains(cone, k))
        for (bool strict : {true, false}) {
          const auto dp = count_partitions(cone, k, strict).count;
          const auto bf = oracle::brute_force_partition_count(cone, k, strict);
          ++compared;
          if (dp != BigInt(bf)) {
            std::ostringstream s;
            s << "k=(";
            for (auto c : k) s << c << ",";
            s << ") strict=" << strict;
            o.check(false, s.str());
          }
        }
      int j = d - 1;
      while (j >= 0 && k[j] == bound) k[j--] = 0;
      if (j < 0) break;
      ++k[j];
    }
  };
  sweep(orthant(2), 2, 6);
  sweep(wedge(), 2, 6);
  sweep(orthant(3), 3, 3);
  const auto o2 = orthant(2);
  const auto p11 = count_partitions(o2, {1, 1}, true).count;
  const auto p22s = count_partitions(o2, {2, 2}, true).count;
  const auto p22n = count_partitions(o2, {2, 2}, false).count;
  o.check(p11 == 2, "p(1,1) = 2");
  o.check(p22s == 5, "p(2,2) = 5 strict");
  o.check(p22n == 9, "p(2,2) = 9 non-strict");
  o.detail << compared << " counts compared; p(1,1)=" << p11 << " p(2,2)=" << p22s << "/"
           << p22n;
}

// 5. n^{-2/3} log p(C, n k) approaches its limit; Laplace identity for the limit.
void growth_trend(Outcome& o) {
  const auto seq = growth_sequence(orthant(2), {1, 1}, 60);
  auto gap = [&](int n) { return std::abs(seq.rows[n - 1].a_n - seq.limit); };
  double prev = INFINITY;
  for (int n : {4, 8, 16, 32}) {
    o.detail << "n=" << n << ":" << num(gap(n), 4) << " ";
    o.check(gap(n) < prev, "gap decreases at n=" + std::to_string(n));
    prev = gap(n);
  }
  o.detail << "n=60:" << num(gap(60), 4) << " ";
  o.check(gap(60) < gap(32), "gap at n=60 below n=32");
  const double id_err = std::abs(seq.identity_limit - seq.limit);
  o.check(id_err < 1e-9, "identity");
  o.detail << "limit=" << num(seq.limit, 7) << " (reference 2.7037) identity err=" << num(id_err, 2);
}

// 6. Boltzmann moments.
void gibbs_moments(Outcome& o, std::uint64_t seed) {
  const auto cone = orthant(2);
  const auto m500 = make_gibbs_model(cone, {1, 1}, 500);
  const auto mo = moments(m500, 10000, seed);
  double mean_err = 0.0;
  for (int j = 0; j < 2; ++j) mean_err = std::max(mean_err, std::abs(mo.mean[j] / 500.0 - 1.0));
  o.check(mean_err < 0.05, "mean");
  const double gen_ratio = mo.gen_count_mean / mo.gen_ref;
  o.check(std::abs(gen_ratio - 1) < 0.1, "generator count");
  const auto m1000 = make_gibbs_model(cone, {1, 1}, 1000);
  const auto mc = moments(m1000, 10000, seed + 1);
  const double scale = std::pow(1000.0, 4.0 / 3.0);
  double cov_err = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      cov_err = std::max(cov_err, std::abs(mc.cov(i, j) / mc.cov_ref(i, j) - 1.0));
  o.check(cov_err < 0.15, "covariance");
  o.detail << "|mean/n-k|=" << num(mean_err, 3) << " E|G|=" << num(mo.gen_count_mean, 4)
           << " ref=" << num(mo.gen_ref, 4) << " cov/n^(4/3)=[[" << num(mc.cov(0, 0) / scale, 4)
           << "," << num(mc.cov(0, 1) / scale, 4) << "],[" << num(mc.cov(1, 0) / scale, 4) << ","
           << num(mc.cov(1, 1) / scale, 4) << "]] max rel err=" << num(cov_err, 3);
}

// 7. Rejection sampling is uniform on the five zonotopes with endpoint (2, 2).
void uniformity(Outcome& o, std::uint64_t seed) {
  const auto cone = orthant(2);
  const auto support = enumerate_partitions(cone, {2, 2}, true);
  o.check(support.size() == 5, "support has 5 elements");
  const auto model = make_gibbs_model(cone, {2, 2}, 1);
  const UniformSampler draw(model);
  std::vector<std::uint64_t> freq(support.size(), 0);
  const std::uint64_t accepted = 10000;
  std::uint64_t attempts = 0;
  for (std::uint64_t i = 0; i < accepted; ++i) {
    const auto s = draw(1'000'000, replica_seed(seed, i));
    attempts += s.attempts;
    const auto it = std::find(support.begin(), support.end(), s.w);
    if (it == support.end()) {
      o.check(false, "sample outside the support");
      return;
    }
    ++freq[it - support.begin()];
  }
  const double expect = static_cast<double>(accepted) / support.size();
  double tv = 0.0, chi2 = 0.0;
  for (auto f : freq) {
    tv += std::abs(f / static_cast<double>(accepted) - 1.0 / support.size());
    chi2 += (f - expect) * (f - expect) / expect;
  }
  tv /= 2;
  const boost::math::chi_squared dist(static_cast<double>(support.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, chi2));
  o.check(tv < 0.05, "TV < 0.05");
  o.check(p > 1e-3, "chi-square p > 1e-3");
  o.detail << "freq=";
  for (auto f : freq) o.detail << f << " ";
  o.detail << "TV=" << num(tv, 3) << " chi2=" << num(chi2, 4) << " p=" << num(p, 3)
           << " acceptance=" << num(accepted / static_cast<double>(attempts), 3);
}

// 8. Convergence of T/n to the limit shape.
void limit_shape(Outcome& o, std::uint64_t seed) {
  const auto cone = orthant(2);
  LimitShapeConfig cfg{&cone, {1, 1}, {100, 1000, 10000}, 200, seed};
  const auto rows = limit_shape_experiment(cfg);
  double prev = INFINITY;
  for (const auto& r : rows) {
    o.detail << "n=" << r.n << " median=" << num(r.median, 4) << " q90=" << num(r.quantile90, 4)
             << " P[dev>0.05]=" << num(r.deviation_probability, 3) << "; ";
    o.check(r.median < prev, "median decreases at n=" + std::to_string(r.n));
    prev = r.median;
  }
  o.check(rows.back().deviation_probability < 0.01, "deviation probability < 0.01 at n=10^4");
}

// 9. Arrangement duality against the hull oracle.
void face_duality(Outcome& o, std::uint64_t seed) {
  SplitMix64 rng(seed + 9);
  int agreed = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const int d = 2 + inst % 2;
    GeneratorMultiset w;
    for (;;) {
      const int m = d + static_cast<int>(rng.next() % (11 - d));
      std::vector<IntVec> vs;
      for (int i = 0; i < m; ++i) {
        IntVec v(d);
        do {
          for (auto& c : v) c = static_cast<std::int64_t>(rng.next() % 9) - 4;
        } while (gcd_of(v) == 0);
        vs.push_back(v);
      }
      w = canonicalize(vs);
      std::vector<IntVec> keys;
      for (const auto& [x, k] : w.entries) keys.push_back(x);
      if (w.distinct() <= 10 && rank(keys) == d) break;
    }
    if (face_counts(w, d) == hull_oracle(w, d)) ++agreed;
  }
  o.check(agreed == 200, "arrangement = hull oracle");
  bool generic = true;
  for (std::int64_t m = 3; m <= 8; ++m) {
    std::vector<IntVec> vs;
    for (std::int64_t t = 1; t <= m; ++t) vs.push_back({1, t, t * t});
    const auto w = canonicalize(vs);
    generic = generic && face_counts(w, 3).f[0] == m * m - m + 2 &&
              hull_oracle(w, 3).f[0] == m * m - m + 2;
  }
  o.check(generic, "m^2 - m + 2 chambers");
  const auto cone = orthant(2);
  const auto model = make_gibbs_model(cone, {1, 1}, 1000);
  int identity = 0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto w = sample(model, replica_seed(seed, r));
    identity += face_counts(w, 2).f[0] == 2 * static_cast<std::int64_t>(w.distinct());
  }
  o.check(identity == 20, "f0 = 2|G(T)|");
  o.detail << agreed << "/200 instances agree; generic m=3..8 " << (generic ? "ok" : "mismatch")
           << "; f0 = 2|G| on " << identity << "/20 samples";
}

// 10. Scale of the face numbers.
void face_scale(Outcome& o, std::uint64_t seed) {
  auto band = [&](const PolyhedralCone& cone, const IntVec& k, std::vector<std::int64_t> ns) {
    FaceStatisticsConfig cfg{&cone, k, std::move(ns), 100, seed};
    const auto rows = face_statistics_experiment(cfg);
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.ratio_mean[0]);
      hi = std::max(hi, r.ratio_mean[0]);
      o.detail << "n=" << r.n << ":" << num(r.ratio_mean[0], 4) << " ";
    }
    o.detail << "band=" << num(hi / lo, 3) << "; ";
    return hi / lo;
  };
  const auto c2 = orthant(2);
  const auto c3 = orthant(3);
  o.check(band(c2, {1, 1}, {100, 1000, 10000}) <= 3.0, "d=2 band");
  o.check(band(c3, {1, 1, 1}, {50, 200}) <= 3.0, "d=3 band");
}

// 11. Primitive density, cubature inequality, weighted sums.
void lattice_suite(Outcome& o, std::uint64_t seed) {
  const double d2 = primitive_density(1000, 2), d3 = primitive_density(200, 3);
  o.check(std::abs(d2 - 1 / zeta(2)) < 0.01, "density d=2");
  o.check(std::abs(d3 - 1 / zeta(3)) < 0.01, "density d=3");
  o.detail << "density " << num(d2, 5) << "/" << num(1 / zeta(2), 5) << ", " << num(d3, 5) << "/"
           << num(1 / zeta(3), 5) << "; ";

  SplitMix64 rng(seed + 11);
  const HomogeneousFn fs[] = {{HomogeneousFn::Kind::One},
                              {HomogeneousFn::Kind::Coordinate, 0},
                              {HomogeneousFn::Kind::Norm}};
  const double lip[] = {0.0, 1.0, 1.0};
  int ok = 0, polys = 0;
  while (polys < 100) {
    const int d = 2 + polys % 2;
    std::vector<IntVec> pts;
    for (int i = 0; i < 6 + polys % 5; ++i) {
      IntVec p(d);
      for (auto& c : p) c = static_cast<std::int64_t>(rng.next() % 15) - 7;
      pts.push_back(p);
    }
    if (rank([&] {
          std::vector<IntVec> diffs;
          for (const auto& p : pts) {
            IntVec q(d);
            for (int j = 0; j < d; ++j) q[j] = p[j] - pts[0][j];
            diffs.push_back(q);
          }
          return diffs;
        }()) != d)
      continue;
    ++polys;
    bool all = true;
    for (int k = 0; k < 3; ++k) all = all && cubature_check(pts, fs[k], lip[k]).pass;
    ok += all;
  }
  o.check(ok == 100, "cubature inequality");
  o.detail << "cubature " << ok << "/100; ";

  // |beta^{d+h} zeta(d) sum - integral| <= c beta: c is calibrated on the two
  // coarsest betas (the gap can change sign, so one beta alone may sit near a
  // zero) and must hold with slack 1.5 at every finer beta.
  auto rate = [&](const PolyhedralCone& cone, const RealVec& u, const HomogeneousFn& f,
                  std::vector<double> betas, const std::string& label) {
    std::vector<double> ratios;
    o.detail << label << " gap/beta:";
    for (double b : betas) {
      ratios.push_back(weighted_sum_vs_integral(cone, u, b, f).scaled_gap / b);
      o.detail << " " << num(ratios.back(), 4);
    }
    const double c = 1.5 * std::max(ratios[0], ratios[1]);
    for (std::size_t i = 2; i < ratios.size(); ++i)
      o.check(ratios[i] <= c, label + " gap bounded at beta=" + num(betas[i], 3));
    o.detail << "; ";
  };
  rate(orthant(2), {1, 1}, fs[0], {0.2, 0.1, 0.05, 0.025}, "d=2 f=1");
  rate(orthant(2), {1, 1}, fs[2], {0.2, 0.1, 0.05, 0.025}, "d=2 f=|x|");
  rate(orthant(3), {1, 1, 1}, fs[0], {0.2, 0.1, 0.05}, "d=3 f=1");
}

// 12. Maximal volume of caps.
void max_cap(Outcome& o, std::uint64_t seed) {
  SplitMix64 rng(seed + 12);
  const PolyhedralCone cones[] = {orthant(2), wedge()};
  int roundtrips = 0;
  double worst = 0.0;
  for (const auto& cone : cones) {
    const auto& c = cone.interior_dual();
    for (int i = 0; i < 50; ++i) {
      RatVec w(c.size());
      do {
        for (std::size_t j = 0; j < c.size(); ++j)
          w[j] = Rational(c[j]) + Rational(static_cast<std::int64_t>(rng.next() % 41) - 20, 20);
      } while (!dual_contains(cone, to_double(w)));
      const Rational s(1 + static_cast<std::int64_t>(rng.next() % 40), 10);
      const auto r = max_cap_roundtrip(cone, w, s);
      roundtrips += r.status == CheckStatus::Pass;
      worst = std::max(worst, r.relative_error);
    }
  }
  o.check(roundtrips == 100, "round trip");
  int strict = 0;
  double min_z = INFINITY;
  for (int i = 0; i < 10; ++i) {
    const auto& cone = cones[i % 2];
    const RealVec w(cone.interior_dual().begin(), cone.interior_dual().end());
    // Keep the part of C(w <= 1) with a . x >= tau for a facet normal a and
    // tau a fixed fraction of max_{cap} a . x. S misses the apex, so it is no cap.
    const auto& normals = cone.facet_normals();
    const auto& a = normals[(i / 2) % normals.size()];
    RealVec w2(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) w2[j] = -static_cast<double>(a[j]);
    double hmax = 0.0;
    for (const auto& g : cone.generators()) hmax = std::max(hmax, -dot(w2, g) / dot(w, g));
    const double s2 = -(0.1 + 0.04 * i) * hmax;
    const auto r = max_cap_noncap(cone, w, 1.0, w2, s2, 1'000'000, replica_seed(seed, i));
    strict += r.status == CheckStatus::Pass;
    min_z = std::min(min_z, r.margin / r.standard_error);
    if (r.status != CheckStatus::Pass)
      o.detail << "noncap " << i << ": margin=" << num(r.margin, 3)
               << " se=" << num(r.standard_error, 3) << "; ";
  }
  o.check(strict == 10, "strict inequality with 3 SE margin");
  o.detail << roundtrips << "/100 round trips (worst rel err " << num(worst, 2) << "); " << strict
           << "/10 non-cap sets strictly below q (min margin " << num(min_z, 3) << " SE)";
}

struct Entry {
  const char* name;
  double limit;
};

const Entry kEntries[kCriteria] = {
    {"orthant caps exact", 1},
    {"circular cone convergence", 30},
    {"limit-shape closed forms", 10},
    {"counting oracle equivalence", 120},
    {"partition asymptotics trend", 300},
    {"Boltzmann moments", 120},
    {"uniformity of rejection sampling", 60},
    {"limit-shape convergence", 600},
    {"face-count duality", 120},
    {"face-number scale", 600},
    {"lattice sums and cubature", 120},
    {"max-cap property", 180},
};

}  // namespace

std::string criterion_name(int id) {
  require(id >= 1 && id <= kCriteria, ErrorKind::InvalidArgument, "unknown criterion");
  return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  r.limit_seconds = kEntries[id - 1].limit;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: orthant_exactness(o); break;
      case 2: circular_convergence(o); break;
      case 3: boundary_closed_forms(o); break;
      case 4: counting_oracle(o); break;
      case 5: growth_trend(o); break;
      case 6: gibbs_moments(o, seed); break;
      case 7: uniformity(o, seed); break;
      case 8: limit_shape(o, seed); break;
      case 9: face_duality(o, seed); break;
      case 10: face_scale(o, seed); break;
      case 11: lattice_suite(o, seed); break;
      case 12: max_cap(o, seed); break;
    }
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(r.seconds <= r.limit_seconds, "runtime limit");
  r.pass = o.pass;
  r.detail = o.detail.str();
  return r;
}

std::string format(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %-34s (%.2f s / %.0f s) ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.limit_seconds);
  return head + r.detail;
}

}  // namespace zonoshape::acceptance
