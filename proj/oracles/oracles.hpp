#pragma once

#include <cstdint>
#include <vector>

#include "zonoshape/cone.hpp"
#include "zonoshape/multiset.hpp"

namespace zonoshape::oracle {

/// All multisets of nonzero lattice vectors of C (primitive ones when strict)
/// summing to k, built by direct recursion with non-increasing parts. Parts are
/// drawn from the box [0, |k|_1]^d filtered by cone membership, independent of
/// the order-interval machinery.
std::vector<GeneratorMultiset> brute_force_partitions(const PolyhedralCone& cone, const IntVec& k,
                                                      bool strict);

std::uint64_t brute_force_partition_count(const PolyhedralCone& cone, const IntVec& k,
                                          bool strict);

/// Chambers of a central arrangement in R^2 or R^3 by sign vectors at a dense
/// set of probe directions; only for tiny inputs.
std::uint64_t probe_chamber_count(const std::vector<IntVec>& normals, int probes_per_axis);

/// (1/2) int_{t O^d} |x . v| dx by jittered stratified Monte Carlo over the
/// bounding cube [-t, t]^d with `points` samples (d = 2 or 3).
double monte_carlo_cube_support(int d, const RealVec& v, std::uint64_t points, std::uint64_t seed);

/// int_{C(u <= 1) cap {v . x >= 0}} x dx by rejection Monte Carlo from the
/// bounding box of the cap, rescaled like the limit zonoid boundary map.
RealVec monte_carlo_zonoid_boundary(const PolyhedralCone& cone, const RealVec& u, double vol_unit,
                                    const RealVec& v, std::uint64_t points, std::uint64_t seed);

}  // namespace zonoshape::oracle
