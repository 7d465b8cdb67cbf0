#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "zonoshape/types.hpp"

namespace zonoshape {

/// Bounded polytope stored as a list of d-simplices with disjoint interiors.
/// Scalar is double or Rational; Rational keeps every integral exact.
template <class Scalar>
struct Polytope {
  using Point = std::vector<Scalar>;
  using Simplex = std::vector<Point>;  // d+1 vertices

  int dim = 0;
  std::vector<Simplex> simplices;

  bool empty() const { return simplices.empty(); }
};

namespace detail {

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <class Scalar>
Scalar det_in_place(std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
      if (m[p][k] == 0) return 0;
    } else {
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
    }
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Scalar f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

inline Rational factorial_scalar(int n, Rational) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double factorial_scalar(int n, double) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

template <class Scalar>
Scalar simplex_volume(const typename Polytope<Scalar>::Simplex& s) {
  const int d = static_cast<int>(s.size()) - 1;
  std::vector<std::vector<Scalar>> m(d, std::vector<Scalar>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = s[i + 1][j] - s[0][j];
  return detail::abs_value(detail::det_in_place(m)) / detail::factorial_scalar(d, Scalar{});
}

template <class Scalar>
Scalar volume(const Polytope<Scalar>& p) {
  Scalar total = 0;
  for (const auto& s : p.simplices) total += simplex_volume<Scalar>(s);
  return total;
}

/// int_P x dx = sum over simplices of vol(S) * centroid(S). Zero for empty P.
template <class Scalar>
std::vector<Scalar> moment_integral(const Polytope<Scalar>& p) {
  std::vector<Scalar> m(p.dim, Scalar(0));
  for (const auto& s : p.simplices) {
    const Scalar w = simplex_volume<Scalar>(s) / Scalar(static_cast<int>(s.size()));
    for (const auto& v : s)
      for (int j = 0; j < p.dim; ++j) m[j] += w * v[j];
  }
  return m;
}

/// Part of `p` with normal . x >= offset.
///
/// A simplex with a vertices on the kept side and b on the other is cut into a
/// polytope combinatorially equal to Delta_{a-1} x Delta_b: vertex (j, 0) is the
/// j-th kept vertex and (j, k) the crossing point on the edge to the k-th
/// discarded vertex. The staircase triangulation of that product (monotone
/// lattice paths from (0,0) to (a-1,b)) triangulates the clipped piece.
template <class Scalar>
Polytope<Scalar> clip(const Polytope<Scalar>& p, const std::vector<Scalar>& normal,
                      const Scalar& offset) {
  Polytope<Scalar> out;
  out.dim = p.dim;
  for (const auto& s : p.simplices) {
    std::vector<int> pos, neg;
    std::vector<Scalar> f(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Scalar v = -offset;
      for (int j = 0; j < p.dim; ++j) v += normal[j] * s[i][j];
      f[i] = v;
      (v >= 0 ? pos : neg).push_back(static_cast<int>(i));
    }
    if (neg.empty()) {
      out.simplices.push_back(s);
      continue;
    }
    if (pos.empty()) continue;

    const int a = static_cast<int>(pos.size());
    const int b = static_cast<int>(neg.size());
    auto node = [&](int j, int k) -> typename Polytope<Scalar>::Point {
      const auto& pj = s[pos[j]];
      if (k == 0) return pj;
      const auto& nk = s[neg[k - 1]];
      const Scalar fp = f[pos[j]];
      const Scalar fn = f[neg[k - 1]];
      const Scalar denom = fp - fn;
      typename Polytope<Scalar>::Point x(p.dim);
      for (int c = 0; c < p.dim; ++c) x[c] = (fp * nk[c] - fn * pj[c]) / denom;
      return x;
    };
    // Enumerate monotone paths as bit strings: true = advance j, false = advance k.
    const int steps = a - 1 + b;
    std::vector<bool> moves(steps, false);
    std::fill(moves.begin(), moves.begin() + (a - 1), true);
    std::sort(moves.begin(), moves.end());
    do {
      typename Polytope<Scalar>::Simplex simplex;
      simplex.reserve(steps + 1);
      int j = 0, k = 0;
      simplex.push_back(node(j, k));
      for (bool advance_j : moves) {
        advance_j ? ++j : ++k;
        simplex.push_back(node(j, k));
      }
      out.simplices.push_back(std::move(simplex));
    } while (std::next_permutation(moves.begin(), moves.end()));
  }
  return out;
}

template <class Scalar>
Polytope<double> to_double(const Polytope<Scalar>& p) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return p;
  } else {
    Polytope<double> out;
    out.dim = p.dim;
    for (const auto& s : p.simplices) {
      typename Polytope<double>::Simplex t;
      for (const auto& v : s) {
        std::vector<double> x;
        for (const auto& c : v) x.push_back(c.template convert_to<double>());
        t.push_back(std::move(x));
      }
      out.simplices.push_back(std::move(t));
    }
    return out;
  }
}

/// Uniform sampler over a simplicial polytope (simplex chosen by volume,
/// then sorted-uniform spacings inside it).
class PolytopeSampler {
 public:
  explicit PolytopeSampler(Polytope<double> p);

  template <class Rng>
  std::vector<double> operator()(Rng& rng) const {
    const double r = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    const std::size_t idx =
        std::min<std::size_t>(it - cumulative_.begin(), polytope_.simplices.size() - 1);
    const auto& s = polytope_.simplices[idx];
    const int d = polytope_.dim;
    std::vector<double> e(d + 1);
    double total = 0;
    for (auto& x : e) {
      x = -std::log(rng.uniform_open0());
      total += x;
    }
    std::vector<double> out(d, 0.0);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j < d; ++j) out[j] += e[i] / total * s[i][j];
    return out;
  }

  double volume() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  int dim() const { return polytope_.dim; }

 private:
  Polytope<double> polytope_;
  std::vector<double> cumulative_;
};

}  // namespace zonoshape
