#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

namespace zonoshape::oracle {

namespace {

std::vector<IntVec> candidate_parts(const PolyhedralCone& cone, const IntVec& k, bool strict) {
  const int d = cone.dimension();
  std::int64_t r = 0;
  for (auto x : k) r += std::abs(x);
  std::vector<IntVec> parts;
  IntVec x(d, -r);
  for (;;) {
    if (gcd_of(x) != 0 && contains(cone, x) && (!strict || gcd_of(x) == 1)) {
      IntVec rest(d);
      for (int j = 0; j < d; ++j) rest[j] = k[j] - x[j];
      if (contains(cone, rest)) parts.push_back(x);
    }
    int j = d - 1;
    while (j >= 0 && x[j] == r) x[j--] = -r;
    if (j < 0) break;
    ++x[j];
  }
  return parts;
}

}  // namespace

std::vector<GeneratorMultiset> brute_force_partitions(const PolyhedralCone& cone, const IntVec& k,
                                                      bool strict) {
  const auto parts = candidate_parts(cone, k, strict);
  const int d = cone.dimension();
  std::vector<GeneratorMultiset> out;
  std::vector<int> chosen;
  IntVec rem = k;
  auto rec = [&](auto&& self, std::size_t max_index) -> void {
    if (std::all_of(rem.begin(), rem.end(), [](auto v) { return v == 0; })) {
      GeneratorMultiset w;
      for (int i : chosen) ++w.entries[parts[i]];
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t i = 0; i <= max_index && i < parts.size(); ++i) {
      IntVec next(d);
      for (int j = 0; j < d; ++j) next[j] = rem[j] - parts[i][j];
      if (!contains(cone, next)) continue;
      std::swap(rem, next);
      chosen.push_back(static_cast<int>(i));
      self(self, i);
      chosen.pop_back();
      std::swap(rem, next);
    }
  };
  rec(rec, parts.size());
  return out;
}

std::uint64_t brute_force_partition_count(const PolyhedralCone& cone, const IntVec& k,
                                          bool strict) {
  return brute_force_partitions(cone, k, strict).size();
}

std::uint64_t probe_chamber_count(const std::vector<IntVec>& normals, int probes) {
  const int d = static_cast<int>(normals.front().size());
  std::set<std::vector<int>> signs;
  auto record = [&](const RealVec& x) {
    std::vector<int> s;
    for (const auto& n : normals) {
      const double v = dot(x, n);
      if (v == 0.0) return;
      s.push_back(v > 0 ? 1 : -1);
    }
    signs.insert(std::move(s));
  };
  if (d == 2) {
    for (int i = 0; i < probes; ++i) {
      const double a = 2 * std::numbers::pi * (i + 0.5) / probes;
      record({std::cos(a), std::sin(a)});
    }
  } else {
    // Fibonacci sphere.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < probes; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / probes;
      const double r = std::sqrt(1 - z * z);
      record({r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
  }
  return signs.size();
}

double monte_carlo_cube_support(int d, const RealVec& v, std::uint64_t points, std::uint64_t seed) {
  const double tpow = d == 2 ? 3.0 : 6.0;
  const double t = std::pow(tpow, 1.0 / (d + 1));
  const auto per_axis = static_cast<std::uint64_t>(std::llround(std::pow(double(points), 1.0 / d)));
  SplitMix64 rng(seed);
  const double cell = 2 * t / static_cast<double>(per_axis);
  double sum = 0.0;
  std::vector<std::uint64_t> idx(d, 0);
  RealVec x(d);
  for (;;) {
    double l1 = 0.0, s = 0.0;
    for (int j = 0; j < d; ++j) {
      x[j] = -t + (static_cast<double>(idx[j]) + rng.uniform()) * cell;
      l1 += std::abs(x[j]);
      s += x[j] * v[j];
    }
    if (l1 <= t) sum += 0.5 * std::abs(s);
    int k = d - 1;
    while (k >= 0 && idx[k] + 1 == per_axis) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return sum * std::pow(cell, d);
}

RealVec monte_carlo_zonoid_boundary(const PolyhedralCone& cone, const RealVec& u, double vol_unit,
                                    const RealVec& v, std::uint64_t points, std::uint64_t seed) {
  const int d = cone.dimension();
  RealVec lo(d, 0.0), hi(d, 0.0);
  for (const auto& g : cone.generators()) {
    const double s = dot(u, g);
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], static_cast<double>(g[j]) / s);
      hi[j] = std::max(hi[j], static_cast<double>(g[j]) / s);
    }
  }
  double box = 1.0;
  for (int j = 0; j < d; ++j) box *= hi[j] - lo[j];
  SplitMix64 rng(seed);
  RealVec acc(d, 0.0), x(d);
  for (std::uint64_t i = 0; i < points; ++i) {
    for (int j = 0; j < d; ++j) x[j] = lo[j] + rng.uniform() * (hi[j] - lo[j]);
    if (dot(u, x) > 1.0 || dot(v, x) < 0.0 || !contains(cone, x)) continue;
    for (int j = 0; j < d; ++j) acc[j] += x[j];
  }
  const double scale = box / static_cast<double>(points) * (d + 1.0) / (d * vol_unit);
  for (auto& a : acc) a *= scale;
  return acc;
}

}  // namespace zonoshape::oracle
