#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zonoshape/types.hpp"

namespace zonoshape {

/// Pointed, full-dimensional rational polyhedral cone in generator form.
///
/// Generators are reduced to primitive vectors and deduplicated (first
/// occurrence wins). Facet normals and a simplicial fan are derived at
/// construction and never supplied by the caller. Immutable afterwards.
class PolyhedralCone {
 public:
  /// Throws Error(Degenerate) when the generators do not span R^d or the
  /// cone they span contains a line.
  static PolyhedralCone from_generators(std::vector<IntVec> generators);

  int dimension() const { return dim_; }
  const std::vector<IntVec>& generators() const { return generators_; }
  /// Primitive inward normals n_j with C = {x : n_j . x >= 0 for all j}.
  const std::vector<IntVec>& facet_normals() const { return normals_; }
  /// Simplicial fan: d-tuples of generator indices.
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }
  /// |det| of each simplicial piece's generator matrix.
  const std::vector<double>& simplex_volumes() const { return simplex_dets_; }
  /// Integer vector c with c . g > 0 for every generator.
  const IntVec& interior_dual() const { return interior_dual_; }

 private:
  PolyhedralCone() = default;

  int dim_ = 0;
  std::vector<IntVec> generators_;
  std::vector<IntVec> normals_;
  std::vector<std::vector<int>> simplices_;
  std::vector<double> simplex_dets_;
  IntVec interior_dual_;
};

/// Open-dual membership wrapper.
struct DualVector {
  RealVec v;
  bool strict_interior = false;
};

bool contains(const PolyhedralCone& cone, std::span<const std::int64_t> x);
bool contains(const PolyhedralCone& cone, std::span<const Rational> x);
bool contains(const PolyhedralCone& cone, std::span<const double> x);
/// x in the interior: n_j . x > 0 for every facet normal.
bool contains_strictly(const PolyhedralCone& cone, std::span<const double> x);
bool contains_strictly(const PolyhedralCone& cone, std::span<const std::int64_t> x);

bool dual_contains(const PolyhedralCone& cone, std::span<const double> v);
bool dual_contains(const PolyhedralCone& cone, std::span<const Rational> v);
DualVector make_dual_vector(const PolyhedralCone& cone, RealVec v);

struct LaplaceValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// Relative threshold below which v . w counts as touching the dual boundary.
inline constexpr double kDualConditioning = 1e-9;

/// Laplace transform of the cone, int_C exp(-v.x) dx, with analytic gradient
/// and Hessian, summed over the simplicial fan.
LaplaceValue laplace(const PolyhedralCone& cone, std::span<const double> v);

/// Exact value of the Laplace transform at a rational point of the open dual.
Rational laplace_exact(const PolyhedralCone& cone, std::span<const Rational> v);

/// Placing triangulation of the cone spanned by `generators`, processed in
/// input order. Generators falling inside the current cone subdivide the
/// simplices that contain them, so every generator appears in the fan.
std::vector<std::vector<int>> triangulate(const std::vector<IntVec>& generators);

/// Same fan the cone was built with.
std::vector<std::vector<int>> triangulate(const PolyhedralCone& cone);

/// Cone over a regular polygon inscribed in the circle x^2+y^2 = tan^2(half_angle)
/// at height z = 1. Coordinates are rounded to continued-fraction convergents with
/// denominator at most `max_denominator`.
PolyhedralCone regular_cone_approx(double half_angle, int facets,
                                   std::int64_t max_denominator = 10000);

PolyhedralCone orthant(int d);

/// Best continued-fraction convergent p/q of x with q <= max_denominator.
struct Fraction {
  std::int64_t num;
  std::int64_t den;
};
Fraction continued_fraction_convergent(double x, std::int64_t max_denominator);

/// {"d": int, "generators": [[int,...],...]}
PolyhedralCone cone_from_json(const std::string& text);
std::string cone_to_json(const PolyhedralCone& cone);

}  // namespace zonoshape
