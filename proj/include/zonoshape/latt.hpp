#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "zonoshape/cone.hpp"
#include "zonoshape/numeric.hpp"

namespace zonoshape {

inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

/// Lattice points x of C with u . x <= t (x != 0).
struct TruncatedConeQuery {
  const PolyhedralCone* cone = nullptr;
  RealVec u;
  double t = 0.0;
  bool primitive_only = false;
};

namespace detail {

struct WalkBounds {
  IntVec lo, hi;  // bounding box of the cap C(u <= t)
};
WalkBounds walk_bounds(const TruncatedConeQuery& q, std::uint64_t budget);

// Range of the last coordinate allowed by all constraints given the prefix.
bool last_coordinate_range(const TruncatedConeQuery& q, const IntVec& x, std::int64_t& lo,
                           std::int64_t& hi);

}  // namespace detail

/// Calls visit(x) for every point of the query in lexicographic order.
/// Throws BudgetError when the cap volume or the visited count exceeds `budget`.
template <class Visitor>
void for_each_point(const TruncatedConeQuery& q, Visitor&& visit,
                    std::uint64_t budget = kDefaultPointBudget) {
  require(q.cone != nullptr, ErrorKind::InvalidArgument, "query without cone");
  const int d = q.cone->dimension();
  require(static_cast<int>(q.u.size()) == d, ErrorKind::DimensionMismatch,
          "enumerate_points: dimension mismatch");
  require(dual_contains(*q.cone, q.u), ErrorKind::Divergence,
          "enumerate_points: u is not in the open dual");
  if (!(q.t > 0.0)) return;
  const auto box = detail::walk_bounds(q, budget);
  IntVec x = box.lo;
  std::uint64_t visited = 0;
  // Odometer over the first d-1 coordinates; the last is a computed interval.
  for (;;) {
    std::int64_t lo, hi;
    if (detail::last_coordinate_range(q, x, lo, hi)) {
      for (std::int64_t v = lo; v <= hi; ++v) {
        x[d - 1] = v;
        bool zero = true;
        for (auto c : x) zero = zero && c == 0;
        if (zero) continue;
        if (q.primitive_only && gcd_of(x) != 1) continue;
        if (++visited > budget)
          throw BudgetError("enumerate_points: point budget exceeded", visited, budget);
        visit(static_cast<const IntVec&>(x));
      }
    }
    int k = d - 2;
    while (k >= 0 && x[k] == box.hi[k]) {
      x[k] = box.lo[k];
      --k;
    }
    if (k < 0) break;
    ++x[k];
  }
}

std::vector<IntVec> enumerate_points(const TruncatedConeQuery& q,
                                     std::uint64_t budget = kDefaultPointBudget);

/// Fraction of primitive vectors in [1..N]^d.
double primitive_density(std::int64_t n, int d);

/// Positively homogeneous test functions: 1, |x|, x_i, |x|^3.
struct HomogeneousFn {
  enum class Kind { One, Norm, Coordinate, NormCubed } kind = Kind::One;
  int index = 0;

  int degree() const;
  double operator()(std::span<const double> x) const;
  double operator()(std::span<const std::int64_t> x) const;
  std::string name() const;
};

/// int over conv(0, p_1..p_d) of f. Exact closed forms for 1 and x_i; for the
/// norm family (d = 2 or 3) the radial part is exact and the section
/// integral uses Gauss-Legendre quadrature.
double cone_simplex_integral(const std::vector<RealVec>& p, const HomogeneousFn& f);

/// int_C f(x) exp(-u . x) dx = Gamma(d + h + 1) int_{C(u <= 1)} f.
double laplace_moment(const PolyhedralCone& cone, const RealVec& u, const HomogeneousFn& f);

struct CubatureResult {
  double lattice_sum = 0.0;
  double integral = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
  double side = 0.0;  // L
  bool pass = false;
};

/// Riemann-sum error bound for a convex lattice polytope K = conv(vertices),
/// d = 2 or 3: |sum_{K cap Z^d} f - int_K f| <= M (sqrt d / 2) L^d + 4 d! (L+1)^{d-1} sup_K |f|.
/// L is the side of the smallest cube containing K. A single vertex is the
/// point polytope; other lower-dimensional inputs are rejected.
CubatureResult cubature_check(const std::vector<IntVec>& vertices, const HomogeneousFn& f,
                              double lipschitz);

struct WeightedGap {
  double sum = 0.0;
  double integral = 0.0;
  double scaled_gap = 0.0;
  double tail_estimate = 0.0;  // omitted part of beta^{d+h} zeta(d) sum
  std::uint64_t points = 0;
};

/// Primitive points weighted by exp(-beta u . x), truncated where the weight
/// drops below `cutoff`, against int_C f e^{-u . x}.
WeightedGap weighted_sum_vs_integral(const PolyhedralCone& cone, const RealVec& u, double beta,
                                     const HomogeneousFn& f, double cutoff = 1e-16,
                                     std::uint64_t budget = kDefaultPointBudget);

}  // namespace zonoshape
