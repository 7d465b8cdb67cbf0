#pragma once

#include <cstdint>
#include <vector>

#include "zonoshape/cone.hpp"
#include "zonoshape/multiset.hpp"

namespace zonoshape {

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultPartitionBudget = 1'000'000;

struct PartitionCount {
  IntVec k;
  bool strict = true;
  BigInt count = 0;
  std::size_t parts_used = 0;
};

/// Order interval {m in Z^d : m in C, k - m in C}, sorted by c . m for the
/// cone's interior dual c (ties broken lexicographically).
std::vector<IntVec> order_interval(const PolyhedralCone& cone, const IntVec& k,
                                   std::uint64_t budget = kDefaultStateBudget);

/// Candidate parts for k: nonzero points of the order interval, primitive
/// only when strict, in lexicographic order.
std::vector<IntVec> partition_parts(const PolyhedralCone& cone, const IntVec& k, bool strict,
                                    std::uint64_t budget = kDefaultStateBudget);

/// Number of multisets of parts summing to k (unbounded knapsack over the
/// order interval, exact big integers).
PartitionCount count_partitions(const PolyhedralCone& cone, const IntVec& k, bool strict,
                                 std::uint64_t budget = kDefaultStateBudget);

/// p(C, m k) for m = 0..n_max from one table over the order interval of n_max k.
std::vector<BigInt> count_multiples(const PolyhedralCone& cone, const IntVec& k, int n_max,
                                    bool strict, std::uint64_t budget = kDefaultStateBudget);

/// All multiplicity functions omega with X(omega) = k.
std::vector<GeneratorMultiset> enumerate_partitions(
    const PolyhedralCone& cone, const IntVec& k, bool strict,
    std::uint64_t max_results = kDefaultPartitionBudget,
    std::uint64_t budget = kDefaultStateBudget);

/// ((d+1)! zeta(d+1) / zeta(d))^{1/(d+1)}; without the zeta(d) for non-strict.
double partition_constant(int d, bool strict = true);

struct GrowthRow {
  int n = 0;
  BigInt count;
  double a_n = 0.0;  // n^{-d/(d+1)} log p(C, n k)
};

struct GrowthSequence {
  std::vector<GrowthRow> rows;
  double q = 0.0;
  double limit = 0.0;              // partition_constant(d, strict) * q(C, k)
  double identity_limit = 0.0;     // same constant via Lambda(u) + u . k
};

GrowthSequence growth_sequence(const PolyhedralCone& cone, const IntVec& k, int n_max,
                                   bool strict = true,
                                   std::uint64_t budget = kDefaultStateBudget);

}  // namespace zonoshape
