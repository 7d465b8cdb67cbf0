#include "zonoshape/multiset.hpp"

#include "zonoshape/numeric.hpp"

namespace zonoshape {

std::int64_t GeneratorMultiset::total() const {
  std::int64_t t = 0;
  for (const auto& [x, m] : entries) t += m;
  return t;
}

IntVec endpoint(const GeneratorMultiset& w, int d) {
  IntVec s(d, 0);
  for (const auto& [x, m] : w.entries)
    for (int j = 0; j < d; ++j) s[j] += m * x[j];
  return s;
}

GeneratorMultiset canonicalize(const std::vector<IntVec>& vectors) {
  GeneratorMultiset w;
  for (const auto& v : vectors) {
    require(gcd_of(v) != 0, ErrorKind::InvalidArgument, "canonicalize: zero vector");
    auto split = primitive_split(v);
    w.entries[split.primitive] += split.multiple;
  }
  return w;
}

}  // namespace zonoshape
