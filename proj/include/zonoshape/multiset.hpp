#pragma once

#include <map>
#include <vector>

#include "zonoshape/types.hpp"

namespace zonoshape {

/// Multiplicity function omega: primitive vector -> positive multiplicity.
/// Encodes the integral zonotope sum_x omega(x) [0, x].
struct GeneratorMultiset {
  std::map<IntVec, std::int64_t> entries;

  std::size_t distinct() const { return entries.size(); }
  std::int64_t total() const;
  bool operator==(const GeneratorMultiset&) const = default;
};

/// X(omega) = sum omega(x) x; zero vector of length d for the empty multiset.
IntVec endpoint(const GeneratorMultiset& w, int d);

/// Replaces each v = h w (w primitive, h >= 1) by h copies of w.
GeneratorMultiset canonicalize(const std::vector<IntVec>& vectors);

}  // namespace zonoshape
