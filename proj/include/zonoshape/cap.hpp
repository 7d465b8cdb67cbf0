#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zonoshape/cone.hpp"
#include "zonoshape/polytope.hpp"

namespace zonoshape {

/// Gigena data for (C, a).
///
/// `u` makes a the centroid of the section C(u = 1); `lambda` scales the cap so
/// that int_{C(u <= lambda)} x dx = a. `u_laplace` minimizes Lambda(v) + v . a,
/// which is the same direction rescaled. Exact fields are filled when the cone
/// is simplicial and a is rational.
struct CapSolution {
  RealVec a;
  RealVec u;
  std::optional<RatVec> u_exact;
  RealVec u_laplace;
  double lambda = 0.0;
  double vol_unit = 0.0;
  std::optional<Rational> vol_unit_exact;
  double q = 0.0;
  Polytope<double> cap_unit;  // C(u <= 1)
  std::optional<Polytope<Rational>> cap_unit_exact;
  int iterations = 0;         // Newton steps; 0 on the exact path
  double residual = 0.0;      // |grad F| / |a| at the returned u_laplace
};

inline constexpr int kNewtonMaxIterations = 200;
inline constexpr double kNewtonTolerance = 1e-10;

CapSolution solve_cap(const PolyhedralCone& cone, const RatVec& a);
CapSolution solve_cap(const PolyhedralCone& cone, const RealVec& a);

double q_value(const PolyhedralCone& cone, const RatVec& a);
double q_value(const PolyhedralCone& cone, const RealVec& a);

/// q from the unit-cap volume: ((1 + 1/d)^d vol_unit)^{1/(d+1)}.
double q_from_unit_volume(int d, double vol_unit);

/// C(u <= t) triangulated along the cone's fan. Throws Divergence when u is
/// not in the open dual (the cap would be unbounded).
Polytope<Rational> cap_polytope(const PolyhedralCone& cone, const RatVec& u, const Rational& t);
Polytope<double> cap_polytope(const PolyhedralCone& cone, const RealVec& u, double t);

/// Section C(u = 1) as (d-1)-simplices embedded in R^d, with its centroid.
RealVec section_centroid(const PolyhedralCone& cone, const RealVec& u);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus s);

/// Equality case of the max-volume property: Vol C(w <= s) against q(C, a_w)
/// with a_w the cap's own moment vector.
struct CapRoundtrip {
  double volume = 0.0;
  double q = 0.0;
  double relative_error = 0.0;
  CheckStatus status = CheckStatus::Fail;
};
CapRoundtrip max_cap_roundtrip(const PolyhedralCone& cone, const RatVec& w, const Rational& s,
                               double tolerance = 1e-9);

/// Strict case: S = C(w <= s) cut by w2 . x <= s2. Volume and moment of S are
/// Monte Carlo estimates; the margin q(C, int_S x) - Vol S must exceed
/// `sigmas` delta-method standard errors, otherwise the result is Inconclusive.
struct NonCapCheck {
  double volume = 0.0;
  double q = 0.0;
  double margin = 0.0;
  double standard_error = 0.0;
  CheckStatus status = CheckStatus::Inconclusive;
};
NonCapCheck max_cap_noncap(const PolyhedralCone& cone, const RealVec& w, double s,
                           const RealVec& w2, double s2, std::uint64_t samples,
                           std::uint64_t seed, double sigmas = 3.0);

}  // namespace zonoshape
