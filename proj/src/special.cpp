#include "apoint/special.hpp"

#include <cmath>
#include <cstdio>

namespace apoint {

namespace {

constexpr double kShiftThreshold = 10.0;
constexpr int kStirlingTerms = 10;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
  return buf;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

cplx ln_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::domain, "ln_gamma pole at " + format_complex(z));
  }
  cplx shift{0.0, 0.0};
  while (z.real() < kShiftThreshold) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series{0.0, 0.0};
  cplx p = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += bernoulli_2k[k] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= inv2;
  }
  const cplx stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series;
  return stirling - shift;
}

cplx polygamma(int m, cplx z) {
  if (m < 0) throw Error(ErrorKind::domain, "polygamma order must be non-negative");
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::domain, "polygamma pole at " + format_complex(z));
  }
  const double mfact = factorial(m);
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
  cplx shift{0.0, 0.0};
  while (z.real() < kShiftThreshold) {
    shift += sign_m * mfact / std::pow(z, m + 1);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx value;
  if (m == 0) {
    value = std::log(z) - 0.5 * inv;
    cplx p = inv2;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      value -= bernoulli_2k[k] / (2.0 * k) * p;
      p *= inv2;
    }
  } else {
    const cplx inv_m = std::pow(inv, m);
    value = factorial(m - 1) * inv_m + 0.5 * mfact * inv_m * inv;
    cplx p = inv_m * inv2;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      value += bernoulli_2k[k] * factorial(2 * k + m - 1) / factorial(2 * k) * p;
      p *= inv2;
    }
    if (m % 2 == 0) value = -value;
  }
  return value - shift;
}

std::pair<cplx, cplx> scaled_sincos(cplx z) {
  const double x = z.real();
  const double ay = std::abs(z.imag());
  const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
  const double ch = 0.5 * (1.0 + std::exp(-2.0 * ay));
  const double sh = -0.5 * std::expm1(-2.0 * ay) * sgn;
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  return {cplx(sx * ch, cx * sh), cplx(cx * ch, -sx * sh)};
}

}  // namespace apoint
