#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zonoshape/types.hpp"

namespace zonoshape {

using Int128 = __int128;

std::int64_t gcd_of(std::span<const std::int64_t> v);
bool is_primitive(std::span<const std::int64_t> v);

/// v = h * w with w primitive and h >= 1. v must be nonzero.
struct PrimitiveSplit {
  IntVec primitive;
  std::int64_t multiple;
};
PrimitiveSplit primitive_split(std::span<const std::int64_t> v);

Int128 dot128(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
double dot(std::span<const double> a, std::span<const std::int64_t> b);
double dot(std::span<const double> a, std::span<const double> b);
Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b);

/// Exact determinant of a square integer matrix given by rows.
BigInt determinant(const std::vector<IntVec>& rows);
int determinant_sign(const std::vector<IntVec>& rows);

/// Exact determinant for rational matrices (fraction-free on a common denominator).
Rational determinant(const std::vector<RatVec>& rows);

/// Rank of an integer matrix given by rows.
int rank(const std::vector<IntVec>& rows);

/// Integer vector orthogonal to the d-1 given rows (generalized cross product),
/// divided by the gcd of its entries. Zero iff the rows are dependent.
IntVec orthogonal_complement(const std::vector<IntVec>& rows);

/// Solves A x = b exactly; A square and nonsingular, rows given.
RatVec solve(const std::vector<RatVec>& a, const RatVec& b);

double zeta(double s);
double log_big(const BigInt& x);
std::int64_t factorial(int n);
double to_double(const Rational& q);
RealVec to_double(const RatVec& v);
std::int64_t checked_int64(const BigInt& x);

}  // namespace zonoshape
