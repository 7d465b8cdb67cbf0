#include "zonoshape/faces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "zonoshape/gibbs.hpp"
#include "zonoshape/hull.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

namespace zonoshape {

namespace {

// Primitive representative with the first nonzero coordinate positive.
IntVec line_key(const IntVec& v) {
  IntVec p = primitive_split(v).primitive;
  for (auto c : p)
    if (c != 0) {
      if (c < 0)
        for (auto& t : p) t = -t;
      break;
    }
  return p;
}

IntVec cross(const IntVec& a, const IntVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
}

std::vector<IntVec> distinct_lines(const std::vector<IntVec>& vs) {
  std::set<IntVec> keys;
  for (const auto& v : vs) {
    require(!is_zero(v), ErrorKind::InvalidArgument, "arrangement: zero normal");
    keys.insert(line_key(v));
  }
  return {keys.begin(), keys.end()};
}

std::vector<IntVec> keys_of(const GeneratorMultiset& w, int d) {
  std::vector<IntVec> keys;
  for (const auto& [x, m] : w.entries) {
    require(static_cast<int>(x.size()) == d, ErrorKind::DimensionMismatch,
            "face_counts: dimension mismatch");
    keys.push_back(x);
  }
  return keys;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::string to_string(FaceMethod m) {
  switch (m) {
    case FaceMethod::Arrangement:
      return "arrangement";
    case FaceMethod::HullOracle:
      return "hull_oracle";
    case FaceMethod::BuckGeneric:
      return "buck_generic";
  }
  return "?";
}

ArrangementCells central_arrangement_3d(const std::vector<IntVec>& normals) {
  for (const auto& z : normals)
    require(z.size() == 3, ErrorKind::DimensionMismatch, "arrangement: normals must lie in Z^3");
  const auto planes = distinct_lines(normals);
  const auto m = static_cast<std::int64_t>(planes.size());
  require(m >= 1, ErrorKind::InvalidArgument, "arrangement: no hyperplanes");

  // Lines z_i^perp cap z_j^perp, as directions.
  std::vector<IntVec> directions;
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j)
      directions.push_back(cross(planes[i], planes[j]));

  ArrangementCells out;
  out.planes = m;
  SplitMix64 rng(0x5eed5eedull);
  for (int attempt = 0;; ++attempt) {
    require(attempt < 10000, ErrorKind::NonConvergence, "arrangement: no generic slicing plane");
    IntVec w(3);
    for (auto& c : w) c = static_cast<std::int64_t>(rng.next() % 201) - 100;
    bool generic = true;
    for (const auto& z : planes) generic = generic && !is_zero(cross(z, w));
    for (const auto& l : directions) generic = generic && dot128(w, l) != 0;
    if (generic) {
      out.slice_normal = w;
      break;
    }
  }

  // Each line meets the plane w . x = 1 in one point l / (w . l) on the w > 0
  // side; equal points are equal oriented primitive directions. The number of
  // planes through a point follows from its pair count C(mu, 2).
  std::map<IntVec, std::int64_t> pair_count;
  for (const auto& l : directions) {
    IntVec key = primitive_split(l).primitive;
    if (dot128(out.slice_normal, key) < 0)
      for (auto& t : key) t = -t;
    ++pair_count[key];
  }
  const auto v = static_cast<std::int64_t>(pair_count.size());
  std::int64_t incidences = 0;
  for (const auto& [key, p] : pair_count)
    incidences += std::llround((1 + std::sqrt(1.0 + 8.0 * static_cast<double>(p))) / 2);
  const std::int64_t e = m + incidences;
  const std::int64_t r = e - v + 1;
  out.slice = {v, e, r};
  // Every central cell meets the w > 0 side or its antipode does; the m sectors
  // and m chambers crossing w^perp are seen from both sides.
  out.cells = {1, 2 * v, 2 * e - 2 * m, 2 * r - 2 * m};
  out.towers = 4 * out.cells[2];
  return out;
}

FaceVector face_counts(const GeneratorMultiset& w, int d) {
  require(d == 2 || d == 3, ErrorKind::Unsupported, "face_counts: d must be 2 or 3");
  const auto keys = keys_of(w, d);
  require(!keys.empty() && rank(keys) == d, ErrorKind::Degenerate,
          "face_counts: generators do not span R^d");
  FaceVector fv;
  fv.method = FaceMethod::Arrangement;
  if (d == 2) {
    const auto lines = static_cast<std::int64_t>(distinct_lines(keys).size());
    fv.f = {2 * lines, 2 * lines};
    fv.towers = 2 * fv.f[1];
    return fv;
  }
  const auto arr = central_arrangement_3d(keys);
  fv.f = {arr.cells[3], arr.cells[2], arr.cells[1]};
  fv.towers = arr.towers;
  fv.slice = arr.slice;
  return fv;
}

FaceVector hull_oracle(const GeneratorMultiset& w, int d) {
  require(d == 2 || d == 3, ErrorKind::Unsupported, "hull_oracle: d must be 2 or 3");
  std::vector<IntVec> segs;
  for (const auto& [x, m] : w.entries) {
    require(static_cast<int>(x.size()) == d, ErrorKind::DimensionMismatch,
            "hull_oracle: dimension mismatch");
    IntVec s(x);
    for (auto& c : s) c *= m;
    segs.push_back(std::move(s));
  }
  if (segs.size() > static_cast<std::size_t>(kHullOracleMaxGenerators))
    throw BudgetError("hull_oracle: too many generators", segs.size(), kHullOracleMaxGenerators);
  std::vector<IntVec> points;
  for (std::uint32_t mask = 0; mask < (1u << segs.size()); ++mask) {
    IntVec p(d, 0);
    for (std::size_t i = 0; i < segs.size(); ++i)
      if (mask >> i & 1)
        for (int j = 0; j < d; ++j) p[j] += segs[i][j];
    points.push_back(std::move(p));
  }
  const Hull h = convex_hull(points);
  FaceVector fv;
  fv.method = FaceMethod::HullOracle;
  const auto nv = static_cast<std::int64_t>(h.vertices.size());
  const auto nf = static_cast<std::int64_t>(h.facets.size());
  if (d == 2) {
    fv.f = {nv, nf};
    fv.towers = 2 * nf;
    return fv;
  }
  fv.f = {nv, static_cast<std::int64_t>(h.edge_count()), nf};
  // A facet polygon with p vertices carries p edges, each with two vertices.
  for (const auto& facet : h.facets) fv.towers += 2 * static_cast<std::int64_t>(facet.vertices.size());
  return fv;
}

BigInt buck_affine(std::int64_t m, int d, int i) {
  require(d >= 1 && i >= 0 && i <= d && m >= 0, ErrorKind::InvalidArgument,
          "buck_affine: invalid indices");
  BigInt s = 0;
  for (int k = d - i; k <= d; ++k) s += binomial(k, d - i) * binomial(m, k);
  return s;
}

BigInt buck_generic(std::int64_t m, int d, int i) {
  require(d >= 1 && i >= 0 && i <= d && m >= d, ErrorKind::InvalidArgument,
          "buck_generic: need m >= d and 0 <= i <= d");
  if (i == 0) return 1;
  if (d == 1) return 2;
  // Cells of dimension i come from the (i-1)-cells of the affine slice, once on
  // each side, minus those met twice: the cells of the arrangement at infinity.
  BigInt c = 2 * buck_affine(m, d - 1, i - 1);
  if (i >= 2) c -= buck_generic(m, d - 1, i - 1);
  return c;
}

ArrangementCells a_r_cells(int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "a_r_cells: r must be positive");
  if (r > 5) throw BudgetError("a_r_cells: r must lie in 1..5", r, 5);
  std::vector<IntVec> zs;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b)
      for (std::int64_t c = -r; c <= r; ++c) {
        IntVec z{a, b, c};
        if (a * a + b * b + c * c > r * r || gcd_of(z) != 1) continue;
        if (line_key(z) == z) zs.push_back(z);
      }
  return central_arrangement_3d(zs);
}

std::vector<FaceStatisticsRow> face_statistics_experiment(const FaceStatisticsConfig& config) {
  require(config.cone != nullptr, ErrorKind::InvalidArgument, "face_statistics: no cone");
  const int d = config.cone->dimension();
  require(d == 2 || d == 3, ErrorKind::Unsupported, "face_statistics: d must be 2 or 3");
  require(config.replicas >= 1, ErrorKind::InvalidArgument, "face_statistics: no replicas");
  std::vector<FaceStatisticsRow> rows;
  for (const auto n : config.ns) {
    const auto model = make_gibbs_model(*config.cone, config.k, n);
    FaceStatisticsRow row;
    row.n = n;
    row.replicas = config.replicas;
    row.scale = std::pow(static_cast<double>(n), d * (d - 1.0) / (d + 1.0));
    row.ratio_mean.assign(d, 0.0);
    row.f0_ratio_min = INFINITY;
    row.f0_ratio_max = 0.0;
    for (std::uint64_t rep = 0; rep < config.replicas; ++rep) {
      const auto w = sample(model, replica_seed(config.seed, rep));
      const auto fv = face_counts(w, d);
      for (int i = 0; i < d; ++i) row.ratio_mean[i] += static_cast<double>(fv.f[i]) / row.scale;
      const double r0 = static_cast<double>(fv.f[0]) / row.scale;
      row.f0_ratio_min = std::min(row.f0_ratio_min, r0);
      row.f0_ratio_max = std::max(row.f0_ratio_max, r0);
      row.generators_mean += static_cast<double>(w.distinct());
      if (d == 2 && fv.f[0] == 2 * static_cast<std::int64_t>(w.distinct())) ++row.vertex_identity_hits;
    }
    const auto reps = static_cast<double>(config.replicas);
    for (auto& x : row.ratio_mean) x /= reps;
    row.generators_mean /= reps;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace zonoshape
