#include "apoint/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace apoint {

SieveTable::SieveTable(std::size_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit < 2) throw Error(ErrorKind::domain, "sieve limit must be at least 2");
  for (std::size_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::size_t ip = i * p;
      if (p > spf_[i] || ip > limit) break;
      spf_[ip] = p;
    }
  }
}

void SieveTable::check(std::size_t n) const {
  if (n < 1 || n > limit_) {
    throw Error(ErrorKind::out_of_range,
                std::to_string(n) + " outside sieve range [1, " + std::to_string(limit_) + "]");
  }
}

std::uint32_t SieveTable::smallest_prime_factor(std::size_t n) const {
  check(n);
  return spf_[n];
}

bool SieveTable::is_prime(std::size_t n) const {
  check(n);
  return n >= 2 && spf_[n] == n;
}

std::vector<std::pair<std::uint32_t, int>> SieveTable::factorize(std::size_t n) const {
  check(n);
  std::vector<std::pair<std::uint32_t, int>> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<std::size_t> SieveTable::divisors(std::size_t n) const {
  std::vector<std::size_t> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t count = divs.size();
    std::size_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

double SieveTable::mangoldt(std::size_t r) const {
  check(r);
  if (r == 1) return 0.0;
  const std::uint32_t p = spf_[r];
  while (r % p == 0) r /= p;
  return r == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

int SieveTable::moebius(std::size_t m) const {
  int mu = 1;
  for (const auto& [p, e] : factorize(m)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

double SieveTable::mangoldt_k(std::size_t m, int k) const {
  if (k < 0) throw Error(ErrorKind::domain, "mangoldt_k needs k >= 0");
  const auto factors = factorize(m);
  const double logm = std::log(static_cast<double>(m));
  // Only squarefree divisors carry mu(d) != 0: sum over subsets of primes.
  const std::size_t nf = factors.size();
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << nf); ++mask) {
    double logd = 0.0;
    int sign = 1;
    for (std::size_t i = 0; i < nf; ++i) {
      if (mask & (std::size_t{1} << i)) {
        logd += std::log(static_cast<double>(factors[i].first));
        sign = -sign;
      }
    }
    total += sign * std::pow(logm - logd, k);
  }
  return total;
}

std::size_t sieve_limit_from_env() {
  if (const char* env = std::getenv("APOINT_SIEVE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 2) {
      throw Error(ErrorKind::domain, std::string("bad APOINT_SIEVE_LIMIT: ") + env);
    }
    return static_cast<std::size_t>(v);
  }
  return kDefaultSieveLimit;
}

CaCoefficients c_a_coefficients(cplx a, std::size_t limit) {
  if (std::abs(a - 1.0) < 1e-12) {
    throw Error(ErrorKind::level_one, "c_a(r) is undefined for a = 1");
  }
  if (limit < 2) throw Error(ErrorKind::domain, "c_a limit must be at least 2");
  const cplx inv = 1.0 / (1.0 - a);
  std::vector<cplx> c(limit + 1, cplx{0.0, 0.0});
  // acc[k] collects log k + sum of c over proper divisors seen so far.
  std::vector<cplx> acc(limit + 1, cplx{0.0, 0.0});
  for (std::size_t k = 2; k <= limit; ++k) acc[k] = std::log(static_cast<double>(k));
  for (std::size_t r = 2; r <= limit; ++r) {
    c[r] = -acc[r] * inv;
    for (std::size_t k = 2 * r; k <= limit; k += r) acc[k] += c[r];
  }
  return {a, limit, std::move(c)};
}

int delta_indicator(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "delta_indicator needs X > 0");
  return std::abs(x - std::round(x)) < kIntegerTolerance ? 1 : 0;
}

}  // namespace apoint
