#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "apoint/complex_point.hpp"

namespace apoint {

inline constexpr std::size_t kDefaultSieveLimit = 2'000'000;

/// Smallest-prime-factor table built by a linear sieve. Immutable once built,
/// so concurrent queries are safe.
class SieveTable {
 public:
  explicit SieveTable(std::size_t limit = kDefaultSieveLimit);

  std::size_t limit() const noexcept { return limit_; }
  std::uint32_t smallest_prime_factor(std::size_t n) const;
  bool is_prime(std::size_t n) const;

  /// Prime factorization as (prime, exponent) pairs in increasing order.
  std::vector<std::pair<std::uint32_t, int>> factorize(std::size_t n) const;
  /// All positive divisors of n, ascending.
  std::vector<std::size_t> divisors(std::size_t n) const;

  /// Lambda(r): log p if r = p^k, else 0.
  double mangoldt(std::size_t r) const;
  int moebius(std::size_t m) const;
  /// Lambda_k(m) = sum_{d|m} mu(d) log^k(m/d); Lambda_0 is the indicator of m = 1.
  double mangoldt_k(std::size_t m, int k) const;

  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  void check(std::size_t n) const;

  std::size_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Sieve limit honoring the APOINT_SIEVE_LIMIT environment variable.
std::size_t sieve_limit_from_env();

/// Dirichlet coefficients of zeta'(s)/(zeta(s) - a) = sum_{r>=2} c_a(r) r^-s.
struct CaCoefficients {
  cplx a;
  std::size_t limit;
  std::vector<cplx> values;  // values[r], r = 0..limit; values[0] unused

  cplx operator[](std::size_t r) const { return values.at(r); }
};

/// c_a(1) = 0 and c_a(k) = -(log k + sum_{r|k, r<k} c_a(r)) / (1 - a).
CaCoefficients c_a_coefficients(cplx a, std::size_t limit);

/// 1 iff X is within 1e-9 of an integer.
int delta_indicator(double x);

inline constexpr double kIntegerTolerance = 1e-9;

}  // namespace apoint
