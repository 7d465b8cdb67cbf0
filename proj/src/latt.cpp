#include "zonoshape/latt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "zonoshape/cap.hpp"
#include "zonoshape/hull.hpp"

namespace zonoshape {

namespace detail {

WalkBounds walk_bounds(const TruncatedConeQuery& q, std::uint64_t budget) {
  const int d = q.cone->dimension();
  const auto cap = cap_polytope(*q.cone, q.u, q.t);
  const double vol = volume(cap);
  if (vol > static_cast<double>(budget))
    throw BudgetError("enumerate_points: cap volume exceeds the point budget",
                      static_cast<std::uint64_t>(std::min(vol, 1.8e19)), budget);
  WalkBounds b{IntVec(d, 0), IntVec(d, 0)};
  for (const auto& s : cap.simplices)
    for (const auto& v : s)
      for (int j = 0; j < d; ++j) {
        b.lo[j] = std::min<std::int64_t>(b.lo[j], static_cast<std::int64_t>(std::floor(v[j])));
        b.hi[j] = std::max<std::int64_t>(b.hi[j], static_cast<std::int64_t>(std::ceil(v[j])));
      }
  return b;
}

namespace {

std::int64_t floor_div(Int128 a, std::int64_t b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(Int128 a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

bool last_coordinate_range(const TruncatedConeQuery& q, const IntVec& x, std::int64_t& lo,
                           std::int64_t& hi) {
  const int d = q.cone->dimension();
  const int last = d - 1;
  lo = std::numeric_limits<std::int64_t>::min() / 4;
  hi = std::numeric_limits<std::int64_t>::max() / 4;
  for (const auto& n : q.cone->facet_normals()) {
    Int128 prefix = 0;
    for (int j = 0; j < last; ++j) prefix += Int128(n[j]) * x[j];
    const std::int64_t c = n[last];
    if (c > 0) {
      lo = std::max(lo, ceil_div(-prefix, c));
    } else if (c < 0) {
      hi = std::min(hi, floor_div(prefix, -c));
    } else if (prefix < 0) {
      return false;
    }
  }
  double prefix = 0.0;
  for (int j = 0; j < last; ++j) prefix += q.u[j] * static_cast<double>(x[j]);
  const double c = q.u[last];
  const double slack = q.t - prefix;
  // Widen by one and re-test exactly in the same arithmetic as the caller.
  if (c > 0) {
    hi = std::min(hi, static_cast<std::int64_t>(std::floor(slack / c)) + 1);
    while (hi >= lo && prefix + c * static_cast<double>(hi) > q.t) --hi;
  } else if (c < 0) {
    lo = std::max(lo, static_cast<std::int64_t>(std::ceil(slack / c)) - 1);
    while (hi >= lo && prefix + c * static_cast<double>(lo) > q.t) ++lo;
  } else if (slack < 0) {
    return false;
  }
  return lo <= hi;
}

}  // namespace detail

std::vector<IntVec> enumerate_points(const TruncatedConeQuery& q, std::uint64_t budget) {
  std::vector<IntVec> out;
  for_each_point(q, [&](const IntVec& x) { out.push_back(x); }, budget);
  return out;
}

double primitive_density(std::int64_t n, int d) {
  require(n >= 1 && d >= 1, ErrorKind::InvalidArgument, "primitive_density: need N >= 1, d >= 1");
  require(std::pow(static_cast<double>(n), d) <= 1e10, ErrorKind::Budget,
          "primitive_density: N^d too large");
  std::uint64_t hits = 0, total = 0;
  IntVec x(d, 1);
  for (;;) {
    ++total;
    if (gcd_of(x) == 1) ++hits;
    int k = d - 1;
    while (k >= 0 && x[k] == n) x[k--] = 1;
    if (k < 0) break;
    ++x[k];
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

int HomogeneousFn::degree() const {
  switch (kind) {
    case Kind::One:
      return 0;
    case Kind::Norm:
    case Kind::Coordinate:
      return 1;
    case Kind::NormCubed:
      return 3;
  }
  return 0;
}

double HomogeneousFn::operator()(std::span<const double> x) const {
  switch (kind) {
    case Kind::One:
      return 1.0;
    case Kind::Coordinate:
      return x[index];
    case Kind::Norm:
      return std::sqrt(dot(x, x));
    case Kind::NormCubed: {
      const double r = std::sqrt(dot(x, x));
      return r * r * r;
    }
  }
  return 0.0;
}

double HomogeneousFn::operator()(std::span<const std::int64_t> x) const {
  RealVec y(x.begin(), x.end());
  return (*this)(y);
}

std::string HomogeneousFn::name() const {
  switch (kind) {
    case Kind::One:
      return "1";
    case Kind::Coordinate:
      return "x" + std::to_string(index + 1);
    case Kind::Norm:
      return "|x|";
    case Kind::NormCubed:
      return "|x|^3";
  }
  return "?";
}

double cone_simplex_integral(const std::vector<RealVec>& p, const HomogeneousFn& f) {
  const int d = static_cast<int>(p.size());
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = p[i][j];
  const double det = std::abs(m.determinant());
  if (det == 0.0) return 0.0;
  const double dfact = static_cast<double>(factorial(d));
  using Kind = HomogeneousFn::Kind;
  if (f.kind == Kind::One) return det / dfact;
  if (f.kind == Kind::Coordinate) {
    double s = 0.0;
    for (const auto& v : p) s += v[f.index];
    return det / dfact * s / (d + 1);
  }
  // Radial reduction: x = r * sum lambda_i p_i, r in [0,1], lambda on the
  // standard (d-1)-simplex; the section integrand is smooth (0 not on it).
  const double radial = det / (d + f.degree());
  using GL = boost::math::quadrature::gauss<double, 30>;
  RealVec y(d);
  if (d == 2) {
    const double s = GL::integrate(
        [&](double t) {
          const double l = 0.5 * (t + 1.0);
          for (int j = 0; j < 2; ++j) y[j] = l * p[0][j] + (1 - l) * p[1][j];
          return f(y);
        },
        -1.0, 1.0);
    return radial * 0.5 * s;
  }
  require(d == 3, ErrorKind::Unsupported, "norm integrals only for d = 2 or 3");
  // Collapsed coordinates: lambda_1 = s, lambda_2 = (1 - s) t.
  const double s = GL::integrate(
      [&](double a) {
        const double l1 = 0.5 * (a + 1.0);
        const double inner = GL::integrate(
            [&](double b) {
              const double l2 = (1 - l1) * 0.5 * (b + 1.0);
              const double l3 = 1 - l1 - l2;
              for (int j = 0; j < 3; ++j) y[j] = l1 * p[0][j] + l2 * p[1][j] + l3 * p[2][j];
              return f(y);
            },
            -1.0, 1.0);
        return 0.5 * inner * (1 - l1);
      },
      -1.0, 1.0);
  return radial * 0.5 * s;
}

double laplace_moment(const PolyhedralCone& cone, const RealVec& u, const HomogeneousFn& f) {
  const int d = cone.dimension();
  const auto cap = cap_polytope(cone, u, 1.0);
  double total = 0.0;
  for (const auto& s : cap.simplices)
    total += cone_simplex_integral(std::vector<RealVec>(s.begin() + 1, s.end()), f);
  return std::tgamma(d + f.degree() + 1.0) * total;
}

namespace {

double hull_integral(const Hull& hull, const HomogeneousFn& f) {
  // Signed cones from the origin over each facet: 1_K = sum sign(F) 1_conv(0,F) a.e.
  double total = 0.0;
  auto real = [&](int i) { return RealVec(hull.vertices[i].begin(), hull.vertices[i].end()); };
  for (const auto& facet : hull.facets) {
    if (facet.offset == 0) continue;
    const double sign = facet.offset > 0 ? 1.0 : -1.0;
    if (hull.dim == 2) {
      total += sign * cone_simplex_integral({real(facet.vertices[0]), real(facet.vertices[1])}, f);
      continue;
    }
    for (std::size_t i = 1; i + 1 < facet.vertices.size(); ++i)
      total += sign * cone_simplex_integral({real(facet.vertices[0]), real(facet.vertices[i]),
                                              real(facet.vertices[i + 1])},
                                             f);
  }
  return total;
}

}  // namespace

CubatureResult cubature_check(const std::vector<IntVec>& vertices, const HomogeneousFn& f,
                              double lipschitz) {
  require(!vertices.empty(), ErrorKind::InvalidArgument, "cubature_check: empty polytope");
  const int d = static_cast<int>(vertices.front().size());
  CubatureResult r;
  IntVec lo = vertices.front(), hi = vertices.front();
  double sup = 0.0;
  for (const auto& v : vertices) {
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
    // All supported f have |f| convex, so the supremum sits at a vertex.
    sup = std::max(sup, std::abs(f(v)));
  }
  for (int j = 0; j < d; ++j) r.side = std::max(r.side, static_cast<double>(hi[j] - lo[j]));

  if (lo == hi) {
    r.lattice_sum = f(vertices.front());
    r.integral = 0.0;
  } else {
    const Hull hull = convex_hull(vertices);
    IntVec x = lo;
    for (;;) {
      if (hull.contains(x)) r.lattice_sum += f(x);
      int k = d - 1;
      while (k >= 0 && x[k] == hi[k]) {
        x[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++x[k];
    }
    r.integral = hull_integral(hull, f);
  }
  r.lhs = std::abs(r.lattice_sum - r.integral);
  r.bound = lipschitz * std::sqrt(static_cast<double>(d)) / 2.0 * std::pow(r.side, d) +
            4.0 * static_cast<double>(factorial(d)) * std::pow(r.side + 1.0, d - 1) * sup;
  r.pass = r.lhs <= r.bound;
  return r;
}

WeightedGap weighted_sum_vs_integral(const PolyhedralCone& cone, const RealVec& u, double beta,
                                     const HomogeneousFn& f, double cutoff,
                                     std::uint64_t budget) {
  require(beta > 0.0 && beta <= 1.0, ErrorKind::InvalidArgument,
          "weighted_sum_vs_integral: beta must lie in (0, 1]");
  require(cutoff > 0.0 && cutoff < 1.0, ErrorKind::InvalidArgument, "cutoff must lie in (0, 1)");
  const int d = cone.dimension();
  const int h = f.degree();
  const double level = -std::log(cutoff);  // beta u . x <= level

  WeightedGap g;
  TruncatedConeQuery q{&cone, u, level / beta, true};
  double sum = 0.0;
  for_each_point(
      q,
      [&](const IntVec& x) {
        sum += f(x) * std::exp(-beta * dot(u, x));
        ++g.points;
      },
      budget);
  g.sum = sum;
  g.integral = laplace_moment(cone, u, f);
  const double scale = std::pow(beta, d + h) * zeta(d);
  g.scaled_gap = std::abs(scale * sum - g.integral);
  double width = 0.0;
  for (double c : u) width += std::abs(c);
  g.tail_estimate = g.integral * boost::math::gamma_q(static_cast<double>(d + h), level) *
                    std::exp(beta * width);
  return g;
}

}  // namespace zonoshape
