#include "apoint/zeta.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "apoint/special.hpp"

namespace apoint {

namespace {

constexpr double kPoleRadius = 1e-12;
constexpr double kMaxAbscissa = 200.0;
constexpr double kZeroGuard = 1e-12;

using Derivs = std::array<cplx, kMaxDerivOrder + 1>;

// log n for n below the largest cutoff; immutable after first use.
const std::vector<double>& log_table() {
  static const std::vector<double> table = [] {
    const auto size = static_cast<std::size_t>(kMaxHeight) + 1024;
    std::vector<double> t(size);
    for (std::size_t n = 1; n < size; ++n) t[n] = std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

// Smallest prime factor for every index of the log table.
const std::vector<std::uint32_t>& spf_table() {
  static const std::vector<std::uint32_t> table = [] {
    const auto size = log_table().size();
    std::vector<std::uint32_t> spf(size, 0);
    for (std::size_t i = 2; i < size; ++i) {
      if (spf[i] != 0) continue;
      for (std::size_t j = i; j < size; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
      }
    }
    return spf;
  }();
  return table;
}

void check_order(int order) {
  if (order < 0 || order > kMaxDerivOrder) {
    throw Error(ErrorKind::domain, "derivative order out of range");
  }
}

// Euler-Maclaurin: sum_{n<N} n^-s + N^{1-s}/(s-1) + N^{-s}/2
//   + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1},
// differentiated term by term.
void euler_maclaurin(cplx s, int order, const EvalOptions& opts, Derivs& d) {
  const double sigma = s.real();
  const double t = s.imag();
  const int cutoff = static_cast<int>(std::ceil(std::abs(t))) + opts.em_terms_base;
  const auto& logs = log_table();

  d.fill(cplx{0.0, 0.0});
  // n^-s for composite n is the product of the powers of its smallest prime
  // factor and cofactor, so only primes need an exp/sincos.
  const auto& spf = spf_table();
  thread_local std::vector<cplx> powers;
  powers.resize(static_cast<std::size_t>(cutoff));
  for (int n = 1; n < cutoff; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double ln = logs[un];
    cplx p;
    if (n == 1) {
      p = 1.0;
    } else if (spf[un] == static_cast<std::uint32_t>(n)) {
      const double mag = std::exp(-sigma * ln);
      const double ang = -t * ln;
      p = cplx(mag * std::cos(ang), mag * std::sin(ang));
    } else {
      p = powers[spf[un]] * powers[un / spf[un]];
    }
    powers[un] = p;
    d[0] += p;
    for (int j = 1; j <= order; ++j) {
      p *= -ln;
      d[j] += p;
    }
  }

  const double lnN = logs[static_cast<std::size_t>(cutoff)];
  const double N = cutoff;
  const cplx n_ms = std::exp(-s * lnN);  // N^{-s}
  const cplx n_1ms = n_ms * N;           // N^{1-s}

  std::array<double, kMaxDerivOrder + 1> neg_log_pow{};
  neg_log_pow[0] = 1.0;
  for (int j = 1; j <= order; ++j) neg_log_pow[j] = neg_log_pow[j - 1] * -lnN;

  // (s-1)^{-1} and its derivatives: (-1)^k k! / (s-1)^{k+1}
  std::array<cplx, kMaxDerivOrder + 1> pole{};
  const cplx inv = 1.0 / (s - 1.0);
  pole[0] = inv;
  for (int k = 1; k <= order; ++k) pole[k] = pole[k - 1] * inv * static_cast<double>(-k);

  for (int j = 0; j <= order; ++j) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= j; ++i) acc += binomial(j, i) * neg_log_pow[i] * pole[j - i];
    d[j] += n_1ms * acc;
    d[j] += 0.5 * neg_log_pow[j] * n_ms;
  }

  // Taylor coefficients of the rising product in h, truncated at `order`.
  std::array<cplx, kMaxDerivOrder + 2> poly{};
  poly[0] = 1.0;
  auto multiply_linear = [&](cplx root) {
    for (int j = order; j >= 1; --j) poly[j] = poly[j] * root + poly[j - 1];
    poly[0] *= root;
  };
  cplx n_pow = n_ms / N;  // N^{-s-1}
  const double inv_n2 = 1.0 / (N * N);
  for (int k = 1; k <= opts.em_bernoulli_order; ++k) {
    if (k == 1) {
      multiply_linear(s);
    } else {
      multiply_linear(s + (2.0 * k - 3.0));
      multiply_linear(s + (2.0 * k - 2.0));
      n_pow *= inv_n2;
    }
    const double coef = bernoulli_2k[k] / factorial(2 * k);
    for (int j = 0; j <= order; ++j) {
      cplx acc{0.0, 0.0};
      for (int i = 0; i <= j; ++i) {
        acc += binomial(j, i) * factorial(i) * poly[i] * neg_log_pow[j - i];
      }
      d[j] += coef * acc * n_pow;
    }
  }
}

// Sine form: chi(s) = exp(A(s)) * sin(pi s / 2) with
// A(s) = s log 2 + (s - 1) log pi + log Gamma(1 - s). Finite at s = -2k.
void chi_sine_form(cplx s, int order, Derivs& out) {
  const cplx half_pi_s = 0.5 * kPi * s;
  const auto [sin_sc, cos_sc] = scaled_sincos(half_pi_s);
  const double scale = std::abs(half_pi_s.imag());

  Derivs a{};  // derivatives of A, a[0] unused beyond the exponent
  const cplx w = 1.0 - s;
  const cplx a0 = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + ln_gamma(w) + scale;
  if (order >= 1) a[1] = std::log(kTwoPi) - digamma(w);
  for (int i = 2; i <= order; ++i) {
    a[i] = ((i % 2 == 0) ? 1.0 : -1.0) * polygamma(i - 1, w);
  }

  Derivs e{};
  e[0] = std::exp(a0);
  for (int j = 0; j < order; ++j) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= j; ++i) acc += binomial(j, i) * a[i + 1] * e[j - i];
    e[j + 1] = acc;
  }

  Derivs sn{};
  double f = 1.0;
  for (int i = 0; i <= order; ++i) {
    switch (i % 4) {
      case 0: sn[i] = f * sin_sc; break;
      case 1: sn[i] = f * cos_sc; break;
      case 2: sn[i] = -f * sin_sc; break;
      default: sn[i] = -f * cos_sc; break;
    }
    f *= 0.5 * kPi;
  }

  for (int j = 0; j <= order; ++j) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= j; ++i) acc += binomial(j, i) * e[i] * sn[j - i];
    out[j] = acc;
  }
}

// Cosine form: chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)). Finite at
// positive even integers where the sine form is 0 * infinity.
cplx chi_cosine_form(cplx s) {
  const cplx half_pi_s = 0.5 * kPi * s;
  const auto cos_sc = scaled_sincos(half_pi_s).second;
  const double scale = std::abs(half_pi_s.imag());
  const cplx lg = s * std::log(kTwoPi) - std::log(2.0) - ln_gamma(s) - scale;
  return std::exp(lg) / cos_sc;
}

void check_abscissa(cplx s) {
  if (std::abs(s.real()) > kMaxAbscissa) {
    throw Error(ErrorKind::overflow, "|Re s| exceeds 200 at " + format_complex(s));
  }
}

void derivs_impl(cplx s, int order, const EvalOptions& opts, Derivs& d) {
  check_order(order);
  if (std::abs(s - 1.0) < kPoleRadius) {
    throw Error(ErrorKind::pole_at_one, "zeta evaluated at " + format_complex(s));
  }
  if (std::abs(s.imag()) > kMaxHeight) {
    throw Error(ErrorKind::cutoff_overflow, "|Im s| exceeds supported height at " + format_complex(s));
  }
  check_abscissa(s);
  if (s.real() >= kReflectBelow) {
    euler_maclaurin(s, order, opts, d);
    return;
  }
  // zeta(s) = chi(s) zeta(1 - s); d/ds of zeta(1 - s) flips sign per order.
  Derivs c{};
  Derivs z{};
  chi_sine_form(s, order, c);
  euler_maclaurin(1.0 - s, order, opts, z);
  for (int j = 0; j <= order; ++j) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= j; ++i) {
      const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
      acc += binomial(j, i) * c[i] * sign * z[j - i];
    }
    d[j] = acc;
  }
}

}  // namespace

void EvalOptions::validate() const {
  if (em_terms_base < 10) throw Error(ErrorKind::domain, "em_terms_base must be >= 10");
  if (em_bernoulli_order < 1 || em_bernoulli_order > 12) {
    throw Error(ErrorKind::domain, "em_bernoulli_order must lie in [1, 12]");
  }
  if (deriv_order_max < 0 || deriv_order_max > kMaxDerivOrder) {
    throw Error(ErrorKind::domain, "deriv_order_max out of range");
  }
}

void zeta_derivs(cplx s, int order, std::span<cplx> out, const EvalOptions& opts) {
  if (static_cast<int>(out.size()) < order + 1) {
    throw Error(ErrorKind::domain, "output span too small for derivative order");
  }
  Derivs d{};
  derivs_impl(s, order, opts, d);
  for (int j = 0; j <= order; ++j) out[static_cast<std::size_t>(j)] = d[j];
}

cplx zeta(ComplexPoint s, const EvalOptions& opts) { return zeta_deriv(s, 0, opts); }

cplx zeta_deriv(ComplexPoint s, int n, const EvalOptions& opts) {
  opts.validate();
  if (n < 0 || n > opts.deriv_order_max) {
    throw Error(ErrorKind::domain, "derivative order exceeds deriv_order_max");
  }
  Derivs d{};
  derivs_impl(s, n, opts, d);
  return d[n];
}

void chi_derivs(cplx s, int order, std::span<cplx> out) {
  check_order(order);
  check_abscissa(s);
  if (s.real() >= 0.5 && order > 0) {
    throw Error(ErrorKind::domain, "chi derivatives need Re s < 1/2");
  }
  Derivs d{};
  if (s.real() < 0.5) {
    chi_sine_form(s, order, d);
  } else {
    d[0] = chi_cosine_form(s);
  }
  for (int j = 0; j <= order; ++j) out[static_cast<std::size_t>(j)] = d[j];
}

cplx chi(ComplexPoint s) {
  check_abscissa(s);
  Derivs d{};
  if (s.re() < 0.5) {
    chi_sine_form(s, 0, d);
  } else {
    d[0] = chi_cosine_form(s);
  }
  if (!std::isfinite(d[0].real()) || !std::isfinite(d[0].imag())) {
    throw Error(ErrorKind::overflow, "chi is infinite at " + format_complex(s));
  }
  return d[0];
}

cplx log_deriv_zeta(ComplexPoint s, const EvalOptions& opts) {
  opts.validate();
  Derivs d{};
  derivs_impl(s, 1, opts, d);
  if (std::abs(d[0]) <= kZeroGuard) {
    throw Error(ErrorKind::near_zero_division, "zeta vanishes at " + format_complex(s));
  }
  return d[1] / d[0];
}

cplx xi_log_deriv(ComplexPoint s, const EvalOptions& opts) {
  const cplx z = s;
  if (std::abs(z) < kPoleRadius || std::abs(z - 1.0) < kPoleRadius) {
    throw Error(ErrorKind::domain, "xi'/xi needs s outside {0, 1}");
  }
  const cplx ld = log_deriv_zeta(s, opts);
  return 1.0 / z + 1.0 / (z - 1.0) - 0.5 * std::log(kPi) + 0.5 * digamma(0.5 * z) + ld;
}

}  // namespace apoint
