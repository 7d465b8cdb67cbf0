#include "zonoshape/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/zeta.hpp>

namespace zonoshape {

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

bool is_primitive(std::span<const std::int64_t> v) { return gcd_of(v) == 1; }

PrimitiveSplit primitive_split(std::span<const std::int64_t> v) {
  const std::int64_t g = gcd_of(v);
  require(g != 0, ErrorKind::InvalidArgument, "zero vector has no primitive direction");
  IntVec w(v.begin(), v.end());
  for (auto& x : w) x /= g;
  return {std::move(w), g};
}

Int128 dot128(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  Int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Int128(a[i]) * b[i];
  return s;
}

double dot(std::span<const double> a, std::span<const std::int64_t> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * static_cast<double>(b[i]);
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

BigInt from128(Int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u & 0xFFFFFFFFFFFFFFFFull);
  return neg ? BigInt(-out) : out;
}

// Bareiss fraction-free elimination; destroys m.
BigInt bareiss(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

BigInt determinant(const std::vector<IntVec>& rows) {
  const std::size_t n = rows.size();
  if (n == 2) {
    const Int128 v = Int128(rows[0][0]) * rows[1][1] - Int128(rows[0][1]) * rows[1][0];
    return from128(v);
  }
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    require(rows[i].size() == n, ErrorKind::DimensionMismatch, "determinant: matrix not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[i][j];
  }
  return bareiss(std::move(m));
}

int determinant_sign(const std::vector<IntVec>& rows) {
  const std::size_t n = rows.size();
  auto small = [&] {
    for (const auto& r : rows)
      for (auto x : r)
        if (x > (std::int64_t(1) << 40) || x < -(std::int64_t(1) << 40)) return false;
    return true;
  };
  if (n == 3 && small()) {
    const auto& a = rows[0];
    const auto& b = rows[1];
    const auto& c = rows[2];
    const Int128 v = Int128(a[0]) * (Int128(b[1]) * c[2] - Int128(b[2]) * c[1]) -
                     Int128(a[1]) * (Int128(b[0]) * c[2] - Int128(b[2]) * c[0]) +
                     Int128(a[2]) * (Int128(b[0]) * c[1] - Int128(b[1]) * c[0]);
    return (v > 0) - (v < 0);
  }
  const BigInt d = determinant(rows);
  return d.sign();
}

Rational determinant(const std::vector<RatVec>& rows) {
  const std::size_t n = rows.size();
  std::vector<RatVec> m = rows;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

int rank(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<RatVec> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  int rk = 0;
  for (std::size_t c = 0; c < cols && rk < static_cast<int>(m.size()); ++c) {
    std::size_t p = rk;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rk]);
    for (std::size_t i = rk + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[rk][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rk][j];
    }
    ++rk;
  }
  return rk;
}

IntVec orthogonal_complement(const std::vector<IntVec>& rows) {
  const std::size_t d = rows.size() + 1;
  std::vector<BigInt> n(d);
  if (d == 3) {
    const auto& a = rows[0];
    const auto& b = rows[1];
    n[0] = from128(Int128(a[1]) * b[2] - Int128(a[2]) * b[1]);
    n[1] = from128(Int128(a[2]) * b[0] - Int128(a[0]) * b[2]);
    n[2] = from128(Int128(a[0]) * b[1] - Int128(a[1]) * b[0]);
  } else {
    // Cofactor expansion along an appended unit row.
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<IntVec> minor;
      for (const auto& r : rows) {
        IntVec m;
        for (std::size_t c = 0; c < d; ++c)
          if (c != j) m.push_back(r[c]);
        minor.push_back(std::move(m));
      }
      BigInt det = minor.empty() ? BigInt(1) : determinant(minor);
      // Sign so that det([rows; n]) > 0 pattern matches a cross product.
      n[j] = ((d - 1 + j) % 2 == 0) ? det : BigInt(-det);
    }
  }
  BigInt g = 0;
  for (const auto& x : n) g = boost::multiprecision::gcd(g, x);
  IntVec out(d, 0);
  if (g == 0) return out;
  for (std::size_t j = 0; j < d; ++j) out[j] = checked_int64(n[j] / g);
  return out;
}

RatVec solve(const std::vector<RatVec>& a, const RatVec& b) {
  const std::size_t n = a.size();
  std::vector<RatVec> m = a;
  RatVec rhs = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    require(p < n, ErrorKind::Degenerate, "solve: singular matrix");
    std::swap(m[p], m[k]);
    std::swap(rhs[p], rhs[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

double zeta(double s) { return boost::math::zeta(s); }

double log_big(const BigInt& x) {
  require(x > 0, ErrorKind::InvalidArgument, "log of non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

RealVec to_double(const RatVec& v) {
  RealVec out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

std::int64_t checked_int64(const BigInt& x) {
  require(x <= std::numeric_limits<std::int64_t>::max() &&
              x >= std::numeric_limits<std::int64_t>::min(),
          ErrorKind::Unsupported, "integer coordinate exceeds 64-bit range");
  return x.convert_to<std::int64_t>();
}

}  // namespace zonoshape
