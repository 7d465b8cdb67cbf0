#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace zonoshape {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Integer lattice vector.
using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;
using RealVec = std::vector<double>;

enum class ErrorKind {
  DimensionMismatch,
  Divergence,     // point outside the open dual cone
  Conditioning,   // numerically too close to the dual boundary
  Degenerate,     // rank-deficient or otherwise invalid geometry
  Budget,         // configured enumeration/state budget exceeded
  Timeout,        // rejection sampler ran out of attempts
  NonConvergence,
  Unsupported,
  InvalidArgument,
};

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t requested, std::uint64_t budget)
      : Error(ErrorKind::Budget, what), requested_(requested), budget_(budget) {}
  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

class TimeoutError : public Error {
 public:
  TimeoutError(const std::string& what, std::uint64_t attempts)
      : Error(ErrorKind::Timeout, what), attempts_(attempts) {}
  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace zonoshape
