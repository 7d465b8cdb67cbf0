#include "zonoshape/count.hpp"

#include <algorithm>
#include <cmath>

#include "zonoshape/cap.hpp"
#include "zonoshape/latt.hpp"
#include "zonoshape/numeric.hpp"

namespace zonoshape {

namespace {

// Dense index over the bounding box of a sorted order interval.
class IntervalIndex {
 public:
  explicit IntervalIndex(const std::vector<IntVec>& states) : d_(states.front().size()) {
    lo_ = hi_ = states.front();
    for (const auto& s : states)
      for (std::size_t j = 0; j < d_; ++j) {
        lo_[j] = std::min(lo_[j], s[j]);
        hi_[j] = std::max(hi_[j], s[j]);
      }
    std::size_t size = 1;
    stride_.assign(d_, 0);
    for (std::size_t j = d_; j-- > 0;) {
      stride_[j] = size;
      size *= static_cast<std::size_t>(hi_[j] - lo_[j] + 1);
    }
    slot_.assign(size, -1);
    for (std::size_t i = 0; i < states.size(); ++i) slot_[flat(states[i])] = static_cast<int>(i);
  }

  // State index of x, or -1 outside the interval.
  int find(const IntVec& x) const {
    for (std::size_t j = 0; j < d_; ++j)
      if (x[j] < lo_[j] || x[j] > hi_[j]) return -1;
    return slot_[flat(x)];
  }

  // State index of a - b without materializing the difference.
  int find_diff(const IntVec& a, const IntVec& b) const {
    std::size_t f = 0;
    for (std::size_t j = 0; j < d_; ++j) {
      const std::int64_t x = a[j] - b[j];
      if (x < lo_[j] || x > hi_[j]) return -1;
      f += static_cast<std::size_t>(x - lo_[j]) * stride_[j];
    }
    return slot_[f];
  }

 private:
  std::size_t flat(const IntVec& x) const {
    std::size_t f = 0;
    for (std::size_t j = 0; j < d_; ++j) f += static_cast<std::size_t>(x[j] - lo_[j]) * stride_[j];
    return f;
  }

  std::size_t d_;
  IntVec lo_, hi_;
  std::vector<std::size_t> stride_;
  std::vector<int> slot_;
};

IntVec minus(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

// predecessor[p][s] = index of states[s] - parts[p], or -1.
std::vector<std::vector<int>> predecessors(const std::vector<IntVec>& states,
                                           const std::vector<IntVec>& parts,
                                           const IntervalIndex& index) {
  std::vector<std::vector<int>> pred(parts.size(), std::vector<int>(states.size(), -1));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t s = 0; s < states.size(); ++s)
      pred[p][s] = index.find_diff(states[s], parts[p]);
  return pred;
}

}  // namespace

std::vector<IntVec> order_interval(const PolyhedralCone& cone, const IntVec& k,
                                   std::uint64_t budget) {
  const int d = cone.dimension();
  require(static_cast<int>(k.size()) == d, ErrorKind::DimensionMismatch,
          "count: dimension mismatch");
  require(contains(cone, k), ErrorKind::InvalidArgument, "count: k is not in the cone");
  const IntVec& c = cone.interior_dual();
  std::vector<IntVec> states{IntVec(d, 0)};
  const double ck = static_cast<double>(dot128(c, k));
  if (ck > 0) {
    RealVec u(c.begin(), c.end());
    TruncatedConeQuery q{&cone, u, ck, false};
    for_each_point(
        q,
        [&](const IntVec& m) {
          if (contains(cone, minus(k, m))) {
            states.push_back(m);
            if (states.size() > budget)
              throw BudgetError("count: order interval exceeds the state budget", states.size(),
                                budget);
          }
        },
        budget * 64);
  }
  std::sort(states.begin(), states.end(), [&](const IntVec& a, const IntVec& b) {
    const Int128 ca = dot128(c, a), cb = dot128(c, b);
    return ca != cb ? ca < cb : a < b;
  });
  return states;
}

std::vector<IntVec> partition_parts(const PolyhedralCone& cone, const IntVec& k, bool strict,
                                    std::uint64_t budget) {
  auto states = order_interval(cone, k, budget);
  std::vector<IntVec> parts;
  for (auto& s : states) {
    if (gcd_of(s) == 0) continue;
    if (strict && gcd_of(s) != 1) continue;
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

std::vector<BigInt> count_multiples(const PolyhedralCone& cone, const IntVec& k, int n_max,
                                    bool strict, std::uint64_t budget) {
  require(n_max >= 0, ErrorKind::InvalidArgument, "count: n_max must be >= 0");
  IntVec top(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) top[j] = k[j] * n_max;
  const auto states = order_interval(cone, top, budget);
  const IntervalIndex index(states);
  std::vector<IntVec> parts;
  for (const auto& s : states)
    if (gcd_of(s) != 0 && (!strict || gcd_of(s) == 1)) parts.push_back(s);
  std::sort(parts.begin(), parts.end());

  std::vector<BigInt> table(states.size(), BigInt(0));
  table[0] = 1;
  // Parts outermost: each multiset is counted once, in part order.
  for (const auto& p : parts) {
    for (std::size_t s = 1; s < states.size(); ++s) {
      const int prev = index.find_diff(states[s], p);
      if (prev >= 0 && table[prev] != 0) table[s] += table[prev];
    }
  }
  std::vector<BigInt> out;
  for (int m = 0; m <= n_max; ++m) {
    IntVec km(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) km[j] = k[j] * m;
    out.push_back(table[index.find(km)]);
  }
  return out;
}

PartitionCount count_partitions(const PolyhedralCone& cone, const IntVec& k, bool strict,
                                std::uint64_t budget) {
  PartitionCount r;
  r.k = k;
  r.strict = strict;
  r.count = count_multiples(cone, k, 1, strict, budget).back();
  r.parts_used = partition_parts(cone, k, strict, budget).size();
  return r;
}

std::vector<GeneratorMultiset> enumerate_partitions(const PolyhedralCone& cone, const IntVec& k,
                                                    bool strict, std::uint64_t max_results,
                                                    std::uint64_t budget) {
  const auto states = order_interval(cone, k, budget);
  const IntervalIndex index(states);
  std::vector<IntVec> parts;
  for (const auto& s : states)
    if (gcd_of(s) != 0 && (!strict || gcd_of(s) == 1)) parts.push_back(s);
  std::sort(parts.begin(), parts.end());
  const std::size_t np = parts.size(), ns = states.size();
  require(static_cast<double>(np) * static_cast<double>(ns) <= 1e8, ErrorKind::Budget,
          "enumerate_partitions: feasibility table too large");

  // feasible[i][s]: states[s] is a sum of parts with index >= i.
  const auto pred = predecessors(states, parts, index);
  std::vector<std::vector<char>> feasible(np + 1, std::vector<char>(ns, 0));
  feasible[np][0] = 1;
  for (std::size_t i = np; i-- > 0;) {
    for (std::size_t s = 0; s < ns; ++s) {
      const int prev = pred[i][s];
      feasible[i][s] = feasible[i + 1][s] || (prev >= 0 && feasible[i][prev]);
    }
  }

  std::vector<GeneratorMultiset> out;
  GeneratorMultiset current;
  auto rec = [&](auto&& self, std::size_t i, int s) -> void {
    if (s == 0) {
      if (out.size() >= max_results)
        throw BudgetError("enumerate_partitions: too many partitions", out.size() + 1,
                          max_results);
      out.push_back(current);
      return;
    }
    int r = s;
    std::int64_t mult = 0;
    while (r >= 0 && feasible[i][r]) {
      if (feasible[i + 1][r]) {
        if (mult > 0) current.entries[parts[i]] = mult;
        self(self, i + 1, r);
        if (mult > 0) current.entries.erase(parts[i]);
      }
      r = pred[i][r];
      ++mult;
    }
  };
  const int top = index.find(k);
  rec(rec, 0, top);
  return out;
}

double partition_constant(int d, bool strict) {
  const double base = static_cast<double>(factorial(d + 1)) * zeta(d + 1);
  return std::pow(strict ? base / zeta(d) : base, 1.0 / (d + 1));
}

GrowthSequence growth_sequence(const PolyhedralCone& cone, const IntVec& k, int n_max,
                                   bool strict, std::uint64_t budget) {
  require(n_max >= 1, ErrorKind::InvalidArgument, "growth_sequence: n_max must be >= 1");
  const int d = cone.dimension();
  const auto counts = count_multiples(cone, k, n_max, strict, budget);
  GrowthSequence seq;
  for (int n = 1; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.count = counts[n];
    row.a_n = std::pow(static_cast<double>(n), -static_cast<double>(d) / (d + 1)) *
              log_big(counts[n]);
    seq.rows.push_back(std::move(row));
  }
  const RatVec kr(k.begin(), k.end());
  const CapSolution cap = solve_cap(cone, kr);
  seq.q = cap.q;
  const double cd = partition_constant(d, strict);
  seq.limit = cd * cap.q;
  const RealVec kd(k.begin(), k.end());
  const double functional = laplace(cone, cap.u_laplace).value + dot(cap.u_laplace, kd);
  seq.identity_limit =
      cd * std::pow(static_cast<double>(factorial(d + 1)), -1.0 / (d + 1)) * functional;
  return seq;
}

}  // namespace zonoshape
