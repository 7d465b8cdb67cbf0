#include "zonoshape/cone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <nlohmann/json.hpp>

#include "zonoshape/numeric.hpp"

namespace zonoshape {

namespace {

std::vector<IntVec> rows_of(const std::vector<IntVec>& gens, const std::vector<int>& idx) {
  std::vector<IntVec> rows;
  rows.reserve(idx.size());
  for (int i : idx) rows.push_back(gens[i]);
  return rows;
}

int side(const std::vector<IntVec>& gens, const std::vector<int>& facet, const IntVec& p) {
  auto rows = rows_of(gens, facet);
  rows.push_back(p);
  return determinant_sign(rows);
}

struct BoundaryFacet {
  std::vector<int> facet;  // sorted, d-1 indices
  int opposite;            // remaining vertex of the owning simplex
};

std::vector<BoundaryFacet> boundary_facets(const std::vector<std::vector<int>>& simplices) {
  std::map<std::vector<int>, std::pair<int, int>> seen;  // facet -> (opposite, count)
  for (const auto& s : simplices) {
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> f;
      f.reserve(s.size() - 1);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) f.push_back(s[i]);
      auto [it, inserted] = seen.try_emplace(std::move(f), s[drop], 0);
      ++it->second.second;
    }
  }
  std::vector<BoundaryFacet> out;
  for (auto& [f, info] : seen)
    if (info.second == 1) out.push_back({f, info.first});
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<std::vector<int>> triangulate(const std::vector<IntVec>& gens) {
  require(!gens.empty(), ErrorKind::Degenerate, "triangulate: no generators");
  const int d = static_cast<int>(gens.front().size());

  // Initial simplex: first d linearly independent generators in input order.
  std::vector<int> base;
  std::vector<IntVec> picked;
  for (int i = 0; i < static_cast<int>(gens.size()) && static_cast<int>(base.size()) < d; ++i) {
    picked.push_back(gens[i]);
    if (rank(picked) == static_cast<int>(picked.size())) {
      base.push_back(i);
    } else {
      picked.pop_back();
    }
  }
  require(static_cast<int>(base.size()) == d, ErrorKind::Degenerate,
          "triangulate: generators have rank < d");

  std::vector<std::vector<int>> simplices{base};
  for (int p = 0; p < static_cast<int>(gens.size()); ++p) {
    if (std::find(base.begin(), base.end(), p) != base.end()) continue;
    const IntVec& pt = gens[p];

    std::vector<std::vector<int>> added;
    for (const auto& bf : boundary_facets(simplices)) {
      const int s_in = side(gens, bf.facet, gens[bf.opposite]);
      const int s_p = side(gens, bf.facet, pt);
      if (s_p != 0 && s_p == -s_in) {
        auto s = bf.facet;
        s.push_back(p);
        added.push_back(sorted(std::move(s)));
      }
    }
    if (!added.empty()) {
      simplices.insert(simplices.end(), added.begin(), added.end());
      continue;
    }

    // p lies in the current cone: stellar subdivision of every simplex containing it.
    std::vector<std::vector<int>> next;
    for (const auto& s : simplices) {
      const int s0 = determinant_sign(rows_of(gens, s));
      bool inside = true;
      std::vector<int> replace_signs(s.size());
      for (std::size_t i = 0; i < s.size() && inside; ++i) {
        auto rows = rows_of(gens, s);
        rows[i] = pt;
        replace_signs[i] = determinant_sign(rows);
        if (replace_signs[i] == -s0) inside = false;
      }
      if (!inside) {
        next.push_back(s);
        continue;
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (replace_signs[i] == 0) continue;
        auto t = s;
        t[i] = p;
        next.push_back(sorted(std::move(t)));
      }
    }
    simplices = std::move(next);
  }
  return simplices;
}

PolyhedralCone PolyhedralCone::from_generators(std::vector<IntVec> input) {
  require(!input.empty(), ErrorKind::Degenerate, "cone needs at least one generator");
  const int d = static_cast<int>(input.front().size());
  require(d >= 2, ErrorKind::InvalidArgument, "cone dimension must be at least 2");

  PolyhedralCone cone;
  cone.dim_ = d;
  for (auto& g : input) {
    require(static_cast<int>(g.size()) == d, ErrorKind::DimensionMismatch,
            "generators must share one dimension");
    require(gcd_of(g) != 0, ErrorKind::Degenerate, "zero generator");
    IntVec w = primitive_split(g).primitive;
    if (std::find(cone.generators_.begin(), cone.generators_.end(), w) == cone.generators_.end())
      cone.generators_.push_back(std::move(w));
  }
  require(rank(cone.generators_) == d, ErrorKind::Degenerate,
          "generators do not span R^d (cone is not full-dimensional)");

  cone.simplices_ = triangulate(cone.generators_);

  for (const auto& bf : boundary_facets(cone.simplices_)) {
    IntVec n = orthogonal_complement(rows_of(cone.generators_, bf.facet));
    if (dot128(n, cone.generators_[bf.opposite]) < 0)
      for (auto& x : n) x = -x;
    if (std::find(cone.normals_.begin(), cone.normals_.end(), n) == cone.normals_.end())
      cone.normals_.push_back(std::move(n));
  }
  std::sort(cone.normals_.begin(), cone.normals_.end());

  cone.interior_dual_.assign(d, 0);
  for (const auto& n : cone.normals_)
    for (int i = 0; i < d; ++i) cone.interior_dual_[i] += n[i];
  const IntVec c = cone.interior_dual_;
  for (const auto& g : cone.generators_) {
    require(dot128(c, g) > 0, ErrorKind::Degenerate, "cone is not pointed");
    for (const auto& n : cone.normals_)
      require(dot128(n, g) >= 0, ErrorKind::Degenerate, "inconsistent facet description");
  }
  if (gcd_of(cone.interior_dual_) > 1) cone.interior_dual_ = primitive_split(c).primitive;

  for (const auto& s : cone.simplices_) {
    const BigInt det = determinant(rows_of(cone.generators_, s));
    cone.simplex_dets_.push_back(std::abs(det.convert_to<double>()));
  }
  return cone;
}

bool contains(const PolyhedralCone& cone, std::span<const std::int64_t> x) {
  require(static_cast<int>(x.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "contains: dimension mismatch");
  for (const auto& n : cone.facet_normals())
    if (dot128(n, x) < 0) return false;
  return true;
}

bool contains(const PolyhedralCone& cone, std::span<const Rational> x) {
  require(static_cast<int>(x.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "contains: dimension mismatch");
  for (const auto& n : cone.facet_normals())
    if (dot(x, n) < 0) return false;
  return true;
}

bool contains(const PolyhedralCone& cone, std::span<const double> x) {
  require(static_cast<int>(x.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "contains: dimension mismatch");
  for (const auto& n : cone.facet_normals())
    if (dot(x, n) < 0.0) return false;
  return true;
}

bool contains_strictly(const PolyhedralCone& cone, std::span<const double> x) {
  require(static_cast<int>(x.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "contains: dimension mismatch");
  for (const auto& n : cone.facet_normals())
    if (!(dot(x, n) > 0.0)) return false;
  return true;
}

bool contains_strictly(const PolyhedralCone& cone, std::span<const std::int64_t> x) {
  require(static_cast<int>(x.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "contains: dimension mismatch");
  for (const auto& n : cone.facet_normals())
    if (dot128(n, x) <= 0) return false;
  return true;
}

bool dual_contains(const PolyhedralCone& cone, std::span<const double> v) {
  require(static_cast<int>(v.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "dual_contains: dimension mismatch");
  for (const auto& g : cone.generators())
    if (!(dot(v, g) > 0.0)) return false;
  return true;
}

bool dual_contains(const PolyhedralCone& cone, std::span<const Rational> v) {
  require(static_cast<int>(v.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "dual_contains: dimension mismatch");
  for (const auto& g : cone.generators())
    if (dot(v, g) <= 0) return false;
  return true;
}

DualVector make_dual_vector(const PolyhedralCone& cone, RealVec v) {
  const bool inside = dual_contains(cone, v);
  return {std::move(v), inside};
}

LaplaceValue laplace(const PolyhedralCone& cone, std::span<const double> v) {
  const int d = cone.dimension();
  require(static_cast<int>(v.size()) == d, ErrorKind::DimensionMismatch,
          "laplace: dimension mismatch");
  const auto& gens = cone.generators();
  std::vector<double> vg(gens.size());
  const double vnorm = std::sqrt(dot(v, v));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    vg[i] = dot(v, gens[i]);
    if (!(vg[i] > 0.0))
      throw Error(ErrorKind::Divergence, "laplace: v is outside the open dual cone");
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    double gnorm = 0.0;
    for (auto x : gens[i]) gnorm += static_cast<double>(x) * static_cast<double>(x);
    if (vg[i] < kDualConditioning * vnorm * std::sqrt(gnorm))
      throw Error(ErrorKind::Conditioning, "laplace: v is too close to the dual boundary");
  }

  LaplaceValue out;
  out.gradient = Eigen::VectorXd::Zero(d);
  out.hessian = Eigen::MatrixXd::Zero(d, d);
  const auto& simplices = cone.simplices();
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    double value = cone.simplex_volumes()[s];
    Eigen::VectorXd first = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
    for (int gi : simplices[s]) {
      const double a = vg[gi];
      value /= a;
      Eigen::VectorXd w(d);
      for (int j = 0; j < d; ++j) w[j] = static_cast<double>(gens[gi][j]) / a;
      first += w;
      second += w * w.transpose();
    }
    out.value += value;
    out.gradient -= value * first;
    out.hessian += value * (first * first.transpose() + second);
  }
  return out;
}

Rational laplace_exact(const PolyhedralCone& cone, std::span<const Rational> v) {
  require(dual_contains(cone, v), ErrorKind::Divergence,
          "laplace: v is outside the open dual cone");
  const auto& gens = cone.generators();
  Rational total = 0;
  for (const auto& s : cone.simplices()) {
    BigInt det = determinant(rows_of(gens, s));
    if (det < 0) det = -det;
    Rational value(det);
    for (int gi : s) value /= dot(v, gens[gi]);
    total += value;
  }
  return total;
}

std::vector<std::vector<int>> triangulate(const PolyhedralCone& cone) { return cone.simplices(); }

Fraction continued_fraction_convergent(double x, std::int64_t max_denominator) {
  require(max_denominator >= 1, ErrorKind::InvalidArgument, "max_denominator must be >= 1");
  const bool negative = x < 0;
  double r = std::abs(x);
  std::int64_t h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Fraction best{static_cast<std::int64_t>(std::floor(r)), 1};
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(r);
    if (a_f > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t h = a * h1 + h2;
    const std::int64_t k = a * k1 + k2;
    if (k > max_denominator) break;
    best = {h, k};
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const double frac = r - a_f;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (negative) best.num = -best.num;
  return best;
}

PolyhedralCone regular_cone_approx(double half_angle, int facets, std::int64_t max_denominator) {
  require(facets >= 3, ErrorKind::InvalidArgument, "regular_cone_approx: need at least 3 facets");
  require(half_angle > 0.0 && half_angle < std::numbers::pi / 2, ErrorKind::InvalidArgument,
          "regular_cone_approx: half angle must lie in (0, pi/2)");
  const double radius = std::tan(half_angle);
  std::vector<IntVec> gens;
  gens.reserve(facets);
  for (int j = 0; j < facets; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / facets;
    const Fraction fx = continued_fraction_convergent(radius * std::cos(theta), max_denominator);
    const Fraction fy = continued_fraction_convergent(radius * std::sin(theta), max_denominator);
    IntVec g{fx.num * fy.den, fy.num * fx.den, fx.den * fy.den};
    gens.push_back(primitive_split(g).primitive);
  }
  return PolyhedralCone::from_generators(std::move(gens));
}

PolyhedralCone orthant(int d) {
  std::vector<IntVec> gens;
  for (int i = 0; i < d; ++i) {
    IntVec e(d, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return PolyhedralCone::from_generators(std::move(gens));
}

PolyhedralCone cone_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("cone file: ") + e.what());
  }
  require(j.contains("d") && j.contains("generators"), ErrorKind::InvalidArgument,
          "cone file needs \"d\" and \"generators\"");
  const int d = j.at("d").get<int>();
  auto gens = j.at("generators").get<std::vector<IntVec>>();
  for (const auto& g : gens)
    require(static_cast<int>(g.size()) == d, ErrorKind::DimensionMismatch,
            "cone file: generator length differs from d");
  return PolyhedralCone::from_generators(std::move(gens));
}

std::string cone_to_json(const PolyhedralCone& cone) {
  nlohmann::json j;
  j["d"] = cone.dimension();
  j["generators"] = cone.generators();
  return j.dump();
}

}  // namespace zonoshape
