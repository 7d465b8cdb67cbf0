#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonoshape/cone.hpp"
#include "zonoshape/multiset.hpp"

namespace zonoshape {

enum class FaceMethod { Arrangement, HullOracle, BuckGeneric };
std::string to_string(FaceMethod m);

/// f[i] = number of i-faces of the zonotope, towers = full flags
/// F0 < F1 < ... < F_{d-1}.
struct FaceVector {
  std::vector<std::int64_t> f;
  std::int64_t towers = 0;
  FaceMethod method = FaceMethod::Arrangement;
  // d = 3 arrangement path only: vertices, edges, regions of the affine line
  // arrangement cut out by the slicing plane.
  std::vector<std::int64_t> slice;

  bool operator==(const FaceVector& o) const { return f == o.f && towers == o.towers; }
};

/// Cells of a central arrangement in R^3; cells[k] = number of k-cells
/// (cells[0] = 1, the origin).
struct ArrangementCells {
  std::int64_t planes = 0;
  std::vector<std::int64_t> cells;
  std::int64_t towers = 0;  // chamber > 2-cell > ray flags
  IntVec slice_normal;      // certified generic plane w . x = 1
  std::vector<std::int64_t> slice;
};

/// Hyperplanes z^perp, z primitive up to sign; exact, via a slicing plane
/// drawn from a fixed pseudorandom sequence until w . z != 0 and
/// w . (z_i x z_j) != 0 for every pair with z_i x z_j != 0.
ArrangementCells central_arrangement_3d(const std::vector<IntVec>& normals);

/// Faces of T = sum of segments [0, omega(x) x] via the dual central
/// arrangement; d = 2 or 3, keys must span R^d.
FaceVector face_counts(const GeneratorMultiset& w, int d);

inline constexpr int kHullOracleMaxGenerators = 12;

/// Convex hull of all 2^m subset sums, faces read off the hull.
FaceVector hull_oracle(const GeneratorMultiset& w, int d);

/// Cells of the affine generic arrangement: sum_{k=d-i}^{d} C(k, d-i) C(m, k).
BigInt buck_affine(std::int64_t m, int d, int i);

/// i-dimensional cells of a generic central arrangement of m >= d hyperplanes
/// in R^d: C(m,d,0) = 1, C(m,d,i) = 2 A(m,d-1,i-1) - [i >= 2] C(m,d-1,i-1).
/// An upper bound for every central arrangement of m hyperplanes.
BigInt buck_generic(std::int64_t m, int d, int i);

/// A_r: hyperplanes z^perp for primitive z in Z^3 with |z| <= r, up to sign.
ArrangementCells a_r_cells(int r);

struct FaceStatisticsRow {
  std::int64_t n = 0;
  std::uint64_t replicas = 0;
  double scale = 0.0;                  // n^{d(d-1)/(d+1)}
  std::vector<double> ratio_mean;      // mean f_i / scale
  double f0_ratio_min = 0.0;
  double f0_ratio_max = 0.0;
  double generators_mean = 0.0;        // mean |G(T)|
  std::uint64_t vertex_identity_hits = 0;  // d = 2: replicas with f0 = 2 |G(T)|
};

struct FaceStatisticsConfig {
  const PolyhedralCone* cone = nullptr;
  IntVec k;
  std::vector<std::int64_t> ns;
  std::uint64_t replicas = 100;
  std::uint64_t seed = 0;
};

std::vector<FaceStatisticsRow> face_statistics_experiment(const FaceStatisticsConfig& config);

}  // namespace zonoshape
