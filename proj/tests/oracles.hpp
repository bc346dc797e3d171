#pragma once

// Reference computations that share no code with the library. Each one is
// slow or limited in range, which is fine for tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;
using cplx = std::complex<double>;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// zeta(s) from the alternating eta series with Borwein's acceleration.
// Good to ~1e-15 for |Im s| <= 40 and Re s > -5, away from s = 1.
inline cplx zeta_borwein(cplx s_in, int n = 110) {
  const cld s(s_in.real(), s_in.imag());
  std::vector<long double> d(n + 1);
  long double term = 1.0L / n;  // (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
  long double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= static_cast<long double>(n + i - 1) * (n - i + 1) * 4.0L / ((2.0L * i - 1) * (2.0L * i));
    acc += term;
    d[i] = n * acc;
  }
  cld eta(0.0L, 0.0L);
  for (int k = 0; k < n; ++k) {
    const cld pw = std::exp(-s * std::log(static_cast<long double>(k + 1)));
    const long double c = (k % 2 ? -1.0L : 1.0L) * (d[k] - d[n]);
    eta += c * pw;
  }
  eta /= -d[n];
  const cld z = eta / (1.0L - std::exp((1.0L - s) * std::log(2.0L)));
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Riemann-Siegel theta from its asymptotic series (t >= 10).
inline double rs_theta(double t) {
  const long double T = t;
  return static_cast<double>(T / 2 * std::log(T / (2 * kPiL)) - T / 2 - kPiL / 8 + 1 / (48 * T) +
                             7 / (5760 * T * T * T) + 31 / (80640 * T * T * T * T * T));
}

// Hardy's Z(t) by the Riemann-Siegel formula with the first correction term.
inline double hardy_z(double t) {
  const double r = std::sqrt(t / (2.0 * M_PI));
  const int N = static_cast<int>(std::floor(r));
  const double p = r - N;
  const double th = rs_theta(t);
  double z = 0.0;
  for (int n = 1; n <= N; ++n) z += std::cos(th - t * std::log(n)) / std::sqrt(static_cast<double>(n));
  z *= 2.0;
  const double c0 = std::cos(2.0 * M_PI * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * M_PI * p);
  z += ((N - 1) % 2 ? -1.0 : 1.0) * std::pow(t / (2.0 * M_PI), -0.25) * c0;
  return z;
}

// Sign changes of Z on (t0, t1] with a uniform grid. All zeros below
// t = 1000 are simple and separated by more than 0.1, so a fine grid sees
// every one of them.
inline int critical_line_zero_count(double t0, double t1, double step = 0.002) {
  int changes = 0;
  double prev = hardy_z(t0);
  const int steps = static_cast<int>(std::ceil((t1 - t0) / step));
  for (int i = 1; i <= steps; ++i) {
    const double t = i == steps ? t1 : t0 + i * step;
    const double z = hardy_z(t);
    if ((z < 0) != (prev < 0)) ++changes;
    prev = z;
  }
  return changes;
}

// zeta(sigma) for real sigma > 0, sigma != 1, by direct sum plus an
// Euler-Maclaurin tail written out independently of the library.
inline double zeta_real(double sigma, int N = 1000) {
  long double s = sigma, sum = 0.0L;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<long double>(n), -s);
  const long double Nl = N;
  const long double nps = std::pow(Nl, -s);
  sum += Nl * nps / (s - 1) + nps / 2;
  // B2/2! s N^{-s-1} - B4/4! s(s+1)(s+2) N^{-s-3} + B6/6! ...
  sum += s * nps / (12 * Nl);
  sum -= s * (s + 1) * (s + 2) * nps / (720 * Nl * Nl * Nl);
  sum += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * nps / (30240 * Nl * Nl * Nl * Nl * Nl);
  return static_cast<double>(sum);
}

// Trial-division arithmetic functions.
inline int brute_moebius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

inline double brute_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

}  // namespace oracle
