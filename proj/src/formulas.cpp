#include "apoint/formulas.hpp"

#include <cmath>
#include <functional>

#include "apoint/kernels.hpp"
#include "apoint/special.hpp"

namespace apoint {

namespace {

constexpr cplx kI{0.0, 1.0};

std::size_t floor_index(double x, const SieveTable& sieve) {
  if (!(x >= 0.0)) throw Error(ErrorKind::domain, "sum range must be non-negative");
  const auto m = static_cast<std::size_t>(std::floor(x));
  if (m > sieve.limit()) {
    throw Error(ErrorKind::out_of_range, "sum range " + std::to_string(m) + " exceeds sieve limit " +
                                             std::to_string(sieve.limit()) + " (set APOINT_SIEVE_LIMIT)");
  }
  return m;
}

std::vector<cplx> table(std::size_t m, const std::function<cplx(std::size_t)>& fn) {
  std::vector<cplx> v(m + 1, cplx{0.0, 0.0});
  for (std::size_t k = 1; k <= m; ++k) v[k] = fn(k);
  return v;
}

// e^{2 pi i k X} for k = 0..m, or empty (meaning 1) when X is an integer.
std::vector<cplx> phases(std::size_t m, double X) {
  if (delta_indicator(X)) return {};
  return table(m, [X](std::size_t k) {
    const double kx = static_cast<double>(k) * X;
    const double frac = kx - std::floor(kx);
    return std::polar(1.0, kTwoPi * frac);
  });
}

// sum_{k <= m} phase(k) * w(k)
cplx phased_sum(std::size_t m, const std::vector<cplx>& ph, const std::function<double(std::size_t)>& w) {
  std::vector<cplx> f = table(m, [&](std::size_t k) { return ph.empty() ? cplx(w(k)) : ph[k] * w(k); });
  std::vector<cplx> g(m + 1, cplx{0.0, 0.0});
  if (m >= 1) g[1] = 1.0;
  return parallel::pair_sum(f, g, {});
}

// r^{i d}
cplx pow_i(double r, double d) { return std::polar(1.0, d * std::log(r)); }

// sum over factorizations m r = N of w(m, r).
cplx divisor_pair_sum(std::size_t n, const std::function<cplx(std::size_t, std::size_t)>& w) {
  cplx acc{0.0, 0.0};
  for (std::size_t r : shared_sieve().divisors(n)) acc += w(n / r, r);
  return acc;
}

std::size_t integer_of(double X) { return static_cast<std::size_t>(std::llround(X)); }

void check_delta(double delta) {
  if (delta == 0.0) throw Error(ErrorKind::delta_zero, "formula needs delta != 0 (use the delta -> 0 form)");
}

// zeta, zeta', zeta'' at s
std::array<cplx, 3> zeta012(cplx s) {
  std::array<cplx, 3> d;
  zeta_derivs(s, 2, d);
  return d;
}

}  // namespace

SumParams SumParams::make(cplx a, double X, double alpha, double tau, double T) {
  SumParams p{a, X, alpha, tau, T, 0.0};
  if (!(X > 0.0) || !(T > 0.0)) throw Error(ErrorKind::domain, "X and T must be positive");
  if (alpha != 0.0) p.delta = kTwoPi * alpha / std::log(T / (kTwoPi * X));
  p.validate();
  return p;
}

void SumParams::validate() const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "X must be positive");
  if (!(T / (kTwoPi * X) > std::exp(1.0))) throw Error(ErrorKind::domain, "need T / (2 pi X) > e");
  if (!(tau >= std::abs(delta) + 1.0)) throw Error(ErrorKind::domain, "need tau >= |delta| + 1");
  if (alpha != 0.0) {
    const double expect = kTwoPi * alpha / std::log(T / (kTwoPi * X));
    if (std::abs(delta - expect) > 1e-12 * std::max(1.0, std::abs(expect))) {
      throw Error(ErrorKind::domain, "delta inconsistent with alpha");
    }
  }
}

void TermBreakdown::add(std::string label, cplx value) {
  labels.push_back(std::move(label));
  values.push_back(value);
  total += value;
}

VerificationRow make_row(double T, double T_effective, cplx lhs, const TermBreakdown& rhs) {
  const double dev = std::abs(lhs - rhs.total);
  const double mag = std::abs(rhs.total);
  return {T, T_effective, lhs, rhs.total, dev, dev / rhs.error_scale, mag > 0.0 ? dev / mag : INFINITY};
}

const SieveTable& shared_sieve() {
  static const SieveTable sieve(sieve_limit_from_env());
  return sieve;
}

double scale_t_half_log(double T, int power) { return std::sqrt(T) * std::pow(std::log(T), power); }
double scale_unconditional(double T) { return T * std::exp(-std::sqrt(std::log(T))); }
double scale_rh(double T) { return std::sqrt(T); }

cplx lhs_sum(std::span<const APoint> points, const SumParams& p, int n) {
  if (n < 1) throw Error(ErrorKind::domain, "derivative order must be at least 1");
  if (n > 1 && p.delta != 0.0) throw Error(ErrorKind::domain, "higher derivatives only in the delta = 0 form");
  for (const auto& pt : points) {
    if (!(pt.gamma > p.tau && pt.gamma <= p.T)) {
      throw Error(ErrorKind::window_mismatch, "ordinate " + std::to_string(pt.gamma) + " outside (" +
                                                  std::to_string(p.tau) + ", " + std::to_string(p.T) + "]");
    }
  }
  PointSumSpec spec;
  spec.n = n;
  spec.delta = p.delta;
  spec.x_base = p.X;
  return parallel::point_sum(points, spec);
}

TermBreakdown theorem1_rhs(const SumParams& p) {
  p.validate();
  const auto& sv = shared_sieve();
  const double d = p.delta;
  const double lx = std::log(p.X);
  const double y = p.T / kTwoPi;
  const std::size_t m = floor_index(p.x(), sv);
  const auto ph = phases(m, p.X);
  const cplx x_pow = p.X * pow_i(p.X, -d);  // X^{1 - i delta}

  TermBreakdown out;
  cplx g1{0.0, 0.0};
  if (delta_indicator(p.X)) {
    const cplx div = divisor_pair_sum(integer_of(p.X), [&](std::size_t mm, std::size_t r) {
      return sv.mangoldt(r) * pow_i(static_cast<double>(mm), -d) * std::log(static_cast<double>(mm));
    });
    g1 = -y * (pow_i(p.X, -d) * lx * (0.5 * std::log(y) - 0.5 + kPi / 4.0 * kI) - div);
  }
  out.add("delta_group", g1);

  const cplx s_e = phased_sum(m, ph, [](std::size_t) { return 1.0; });
  const cplx s_elog = phased_sum(m, ph, [](std::size_t k) { return std::log(static_cast<double>(k)); });
  const auto f1 = table(m, [](std::size_t) { return cplx(1.0); });
  const auto lam = table(m, [&](std::size_t r) { return sv.mangoldt(r) * pow_i(static_cast<double>(r), -d); });
  const auto lam_log = table(m, [&](std::size_t r) { return lam[r] * std::log(static_cast<double>(r)); });
  const cplx s_lam = parallel::pair_sum(f1, lam, ph);
  const cplx s_lam_log = parallel::pair_sum(f1, lam_log, ph);

  out.add("geometric", -x_pow * lx * (0.5 * lx - kPi / 4.0 * kI) * s_e);
  out.add("mixed", x_pow * lx * (s_lam - 0.5 * s_elog));
  out.add("prime_log", x_pow * s_lam_log);
  out.error_scale = scale_t_half_log(p.T, 3);
  return out;
}

TermBreakdown fujii_weighted_rhs(double X, double T) {
  if (!(X > 0.0) || !(T / (kTwoPi * X) > 1.0)) throw Error(ErrorKind::domain, "need X > 0 and T / (2 pi X) > 1");
  const auto& sv = shared_sieve();
  const double lx = std::log(X);
  const double y = T / kTwoPi;
  const std::size_t m = floor_index(T / (kTwoPi * X), sv);
  const auto ph = phases(m, X);

  TermBreakdown out;
  cplx g1{0.0, 0.0};
  if (delta_indicator(X)) {
    const cplx div = divisor_pair_sum(integer_of(X), [&](std::size_t mm, std::size_t r) {
      return cplx(sv.mangoldt(r) * std::log(static_cast<double>(mm)));
    });
    g1 = -y * ((0.5 * std::log(y) - 0.5 + kPi / 4.0 * kI) * lx - div);
  }
  out.add("delta_group", g1);
  auto lg = [](std::size_t k) { return std::log(static_cast<double>(k)); };
  out.add("log_squared", X * phased_sum(m, ph, [&](std::size_t k) { return lg(k) * lg(k); }));
  out.add("log", 0.5 * X * lx * phased_sum(m, ph, lg));
  out.add("geometric", -0.25 * X * lx * (2.0 * lx - kPi * kI) * phased_sum(m, ph, [](std::size_t) { return 1.0; }));
  const auto f = table(m, [&](std::size_t k) { return cplx(lg(k)); });
  const auto g = table(m, [&](std::size_t r) { return cplx(sv.mangoldt(r)); });
  out.add("prime_mixed", -X * parallel::pair_sum(f, g, ph));
  out.error_scale = scale_t_half_log(T, 3);
  return out;
}

TermBreakdown fujii_zero_sum_rhs(double T) {
  if (!(T > kTwoPi)) throw Error(ErrorKind::domain, "need T > 2 pi");
  const auto [c0, c1] = laurent_constants();
  const double y = T / kTwoPi;
  const double ly = std::log(y);
  TermBreakdown out;
  out.add("log_squared", 0.5 * y * ly * ly);
  out.add("log", (c0 - 1.0) * y * ly);
  out.add("linear", (1.0 - c0 - c0 * c0 + 3.0 * c1) * y);
  out.error_scale = scale_unconditional(T);
  out.alt_error_scale = scale_rh(T);
  return out;
}

cplx z_delta(double x, double delta) {
  check_delta(delta);
  if (!(x > 1.0)) throw Error(ErrorKind::domain, "z_delta needs x > 1");
  const cplx w(1.0, -delta);
  const auto zm = zeta012(w);
  const auto zp = zeta012(conj(w));
  const cplx ld = zm[1] / zm[0];
  const cplx ld_prime = (zm[2] * zm[0] - zm[1] * zm[1]) / (zm[0] * zm[0]);
  return zp[1] + pow_i(x, -delta) / w * (ld_prime + ld * (std::log(x) - 1.0 / w));
}

TermBreakdown corollary2_rhs(const SumParams& p) {
  p.validate();
  if (!delta_indicator(p.X)) throw Error(ErrorKind::non_integer_x, "corollary needs a positive integer X");
  check_delta(p.delta);
  const auto& sv = shared_sieve();
  const double d = p.delta;
  const double y = p.T / kTwoPi;
  const double lx = std::log(p.X);
  const cplx xd = pow_i(p.X, -d);
  TermBreakdown out;
  out.add("divisor", y * divisor_pair_sum(integer_of(p.X), [&](std::size_t mm, std::size_t r) {
            return sv.mangoldt(r) * pow_i(static_cast<double>(mm), -d) * std::log(static_cast<double>(mm));
          }));
  out.add("z_delta", -xd * y * z_delta(p.x(), d));
  const auto zp = zeta012(cplx(1.0, d));
  const cplx zm = zeta012(cplx(1.0, -d))[0];
  const cplx w(1.0, -d);
  out.add("log_x", -xd * lx * y * (std::log(y) - 1.0 + zp[1] / zp[0] - zm / w * pow_i(p.x(), -d)));
  out.error_scale = scale_unconditional(p.T);
  out.alt_error_scale = scale_rh(p.T);
  return out;
}

cplx z_delta_corrected(double x, double delta) {
  check_delta(delta);
  if (!(x > 1.0)) throw Error(ErrorKind::domain, "z_delta needs x > 1");
  const cplx w(1.0, -delta);
  const auto zm = zeta012(w);
  const auto zp = zeta012(conj(w));
  const cplx ld_prime = (zp[2] * zp[0] - zp[1] * zp[1]) / (zp[0] * zp[0]);
  return ld_prime + pow_i(x, -delta) / w * (zm[1] + zm[0] * (std::log(x) - 1.0 / w));
}

TermBreakdown corollary2_corrected_rhs(const SumParams& p) {
  TermBreakdown shown = corollary2_rhs(p);
  TermBreakdown out;
  out.error_scale = shown.error_scale;
  out.alt_error_scale = shown.alt_error_scale;
  out.add(shown.labels[0], shown.values[0]);
  out.add("z_delta", pow_i(p.X, -p.delta) * (p.T / kTwoPi) * z_delta_corrected(p.x(), p.delta));
  out.add(shown.labels[2], shown.values[2]);
  return out;
}

cplx k_delta_2(double x, double delta) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "K needs x > 0");
  const cplx w(1.0, -delta);
  const double l = std::log(x);
  return x * pow_i(x, -delta) * (l * l / w - 2.0 * l / (w * w) + 2.0 / (w * w * w));
}

cplx k_delta_1(double x, double delta, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "X must be positive");
  if (!delta_indicator(1.0 / X)) return {0.0, 0.0};
  const auto& sv = shared_sieve();
  const std::size_t n = integer_of(1.0 / X);
  const cplx w(1.0, -delta);
  const double l = std::log(x);
  const cplx xw = x * pow_i(x, -delta);
  auto di = [&](std::size_t k) { return pow_i(static_cast<double>(k), delta); };
  const auto divs = sv.divisors(n);

  cplx s1{0.0, 0.0}, s2{0.0, 0.0}, s3{0.0, 0.0};
  for (std::size_t m : divs) {
    const std::size_t rest = n / m;
    s1 += static_cast<double>(sv.moebius(m)) * di(rest);
    const double lam_m = sv.mangoldt(m);
    if (lam_m == 0.0) continue;
    for (std::size_t nn : sv.divisors(rest)) {
      const std::size_t rest2 = rest / nn;
      s2 += lam_m * (di(m) + 1.0) * di(nn) * static_cast<double>(sv.moebius(rest2));
      for (std::size_t r : sv.divisors(rest2)) {
        const double lam_l = sv.mangoldt(rest2 / r);
        if (lam_l == 0.0) continue;
        s3 += lam_m * di(m * nn) * static_cast<double>(sv.moebius(r)) * lam_l;
      }
    }
  }
  return s1 * k_delta_2(x, delta) + s2 * xw * (l / w - 1.0 / (w * w)) + s3 * xw / w;
}

TermBreakdown theorem3_rhs(const SumParams& p, cplx zero_sum) {
  p.validate();
  if (std::abs(p.a - 1.0) < 1e-12) throw Error(ErrorKind::level_one, "a = 1 has no integer-indexed c_a(r)");
  const auto& sv = shared_sieve();
  const double d = p.delta;
  const double y = p.T / kTwoPi;
  TermBreakdown out;
  out.add("zero_sum", zero_sum);
  cplx div{0.0, 0.0};
  if (delta_indicator(p.X)) {
    const std::size_t n = integer_of(p.X);
    const auto ca = c_a_coefficients(p.a, std::max<std::size_t>(n, 2));
    div = -y * divisor_pair_sum(n, [&](std::size_t mm, std::size_t r) {
      return (sv.mangoldt(r) + ca[r]) * pow_i(static_cast<double>(mm), -d) * std::log(static_cast<double>(mm));
    });
  }
  out.add("divisor", div);
  out.add("k_term", -p.a * k_delta_1(y, d, p.X));
  out.error_scale = scale_t_half_log(p.T, 7);
  return out;
}

TermBreakdown corollary_jm_rhs(cplx a, double X, double T) {
  if (!delta_indicator(X) || X < 0.5) throw Error(ErrorKind::non_integer_x, "corollary needs a positive integer X");
  if (std::abs(a - 1.0) < 1e-12) throw Error(ErrorKind::level_one, "a = 1 has no integer-indexed c_a(r)");
  if (!(T > kTwoPi)) throw Error(ErrorKind::domain, "need T > 2 pi");
  const auto [c0, c1] = laurent_constants();
  const std::size_t n = integer_of(X);
  const double one = n == 1 ? 1.0 : 0.0;
  const double lx = std::log(static_cast<double>(n));
  const double y = T / kTwoPi;
  const double ly = std::log(y);
  const auto ca = c_a_coefficients(a, std::max<std::size_t>(n, 2));
  const cplx div = divisor_pair_sum(n, [&](std::size_t mm, std::size_t r) {
    return ca[r] * std::log(static_cast<double>(mm));
  });
  TermBreakdown out;
  out.add("log_squared", (0.5 - a * one) * y * ly * ly);
  // The a-part is the delta -> 0 limit of -a K(T/2pi) = -a y (ly^2 - 2 ly + 2),
  // whose log coefficient is +2a.
  out.add("log", (c0 - 1.0 - lx + 2.0 * a * one) * y * ly);
  out.add("linear", (1.0 - c0 - c0 * c0 + 3.0 * c1 - 2.0 * a * one - div - (c0 - 1.0 + 0.5 * lx) * lx) * y);
  out.error_scale = scale_unconditional(T);
  out.alt_error_scale = scale_rh(T);
  return out;
}

TermBreakdown legacy_jm_rhs(cplx a, double T, cplx zero_sum) {
  const double y = T / kTwoPi;
  const double ly = std::log(y);
  TermBreakdown out;
  out.add("zero_sum", zero_sum);
  out.add("legacy", -a * y * (ly * ly - 2.0 * ly + 2.0));
  out.error_scale = scale_rh(T);
  return out;
}

cplx l_sum_direct(double x, double delta) {
  if (!(x >= 1.0)) throw Error(ErrorKind::domain, "L sum needs x >= 1");
  const auto& sv = shared_sieve();
  const std::size_t m = floor_index(x, sv);
  const auto f = table(m, [](std::size_t) { return cplx(1.0); });
  const auto g = table(m, [&](std::size_t r) {
    const double lr = std::log(static_cast<double>(r));
    return sv.mangoldt(r) * lr * pow_i(static_cast<double>(r), delta);
  });
  return parallel::pair_sum(f, g, {});
}

TermBreakdown l_sum_residue(double x, double delta) {
  check_delta(delta);
  if (!(x > 1.0)) throw Error(ErrorKind::domain, "residue form needs x > 1");
  const cplx w(1.0, delta);
  const auto zp = zeta012(w);
  const auto zm = zeta012(conj(w));
  const cplx ld = zp[1] / zp[0];
  const cplx ld_prime = (zp[2] * zp[0] - zp[1] * zp[1]) / (zp[0] * zp[0]);
  TermBreakdown out;
  out.add("pole_one", -zm[1] * x);
  out.add("pole_delta", -x * pow_i(x, delta) / w * (ld_prime + ld * (std::log(x) - 1.0 / w)));
  out.error_scale = x * std::exp(-std::sqrt(std::log(x)));
  return out;
}

TermBreakdown l_sum_residue_corrected(double x, double delta) {
  check_delta(delta);
  if (!(x > 1.0)) throw Error(ErrorKind::domain, "residue form needs x > 1");
  const cplx w(1.0, delta);
  const auto zp = zeta012(w);
  const auto zm = zeta012(conj(w));
  TermBreakdown out;
  out.add("pole_one", (zm[2] * zm[0] - zm[1] * zm[1]) / (zm[0] * zm[0]) * x);
  out.add("pole_delta", x * pow_i(x, delta) / w * (zp[1] + zp[0] * (std::log(x) - 1.0 / w)));
  out.error_scale = x * std::exp(-std::sqrt(std::log(x)));
  return out;
}

std::pair<cplx, TermBreakdown> fujii_estimate_pair(double x, double delta) {
  check_delta(delta);
  if (!(x >= 1.0)) throw Error(ErrorKind::domain, "estimate needs x >= 1");
  const auto& sv = shared_sieve();
  const std::size_t m = floor_index(x, sv);
  const auto f = table(m, [](std::size_t) { return cplx(1.0); });
  const auto g = table(m, [&](std::size_t r) { return sv.mangoldt(r) * pow_i(static_cast<double>(r), delta); });
  const cplx direct = parallel::pair_sum(f, g, {});
  const cplx w(1.0, delta);
  const auto zp = zeta012(w);
  const auto zm = zeta012(conj(w));
  TermBreakdown main;
  main.add("pole_delta", zp[0] * x * pow_i(x, delta) / w);
  main.add("pole_one", -(zm[1] / zm[0]) * x);
  main.error_scale = x * std::exp(-std::sqrt(std::log(x)));
  return {direct, main};
}

namespace {

void check_a_sum(int k, int n, double T) {
  if (k < 0 || n < k || n > 4) throw Error(ErrorKind::domain, "need 0 <= k <= n <= 4");
  if (!(T > kTwoPi)) throw Error(ErrorKind::domain, "need T > 2 pi");
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

double a1_sum(int k, int n, double T) {
  check_a_sum(k, n, T);
  const auto& sv = shared_sieve();
  const std::size_t m = floor_index(T / kTwoPi, sv);
  const auto f = table(m, [&](std::size_t j) {
    return cplx(sv.mangoldt_k(j, k) * ipow(std::log(static_cast<double>(j)), n - k + 1));
  });
  std::vector<cplx> g(m + 1, cplx{0.0, 0.0});
  g[1] = 1.0;
  return parallel::pair_sum(f, g, {}).real();
}

double a2_sum(int k, int n, double T) {
  check_a_sum(k, n, T);
  const auto& sv = shared_sieve();
  const std::size_t m = floor_index(T / kTwoPi, sv);
  const auto f = table(m, [&](std::size_t j) { return cplx(sv.mangoldt_k(j, k)); });
  const auto g = table(m, [&](std::size_t r) { return cplx(sv.mangoldt(r)); });
  if (n == k) return parallel::pair_sum(f, g, {}).real();
  const auto h = table(m, [&](std::size_t j) { return cplx(ipow(std::log(static_cast<double>(j)), n - k)); });
  return parallel::pair_sum(f, g, h).real();
}

TermBreakdown theorem_nderiv_rhs(cplx a, int n, double T, cplx zero_nderiv_sum) {
  if (n < 1 || n > 3) throw Error(ErrorKind::domain, "derivative order must lie in [1, 3]");
  TermBreakdown out;
  out.add("zero_sum", zero_nderiv_sum);
  for (int k = 0; k <= n; ++k) {
    const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
    const double term = binomial(n, k) * sign * (a1_sum(k, n, T) - a2_sum(k, n, T));
    out.add("k" + std::to_string(k), a * term);
  }
  out.error_scale = scale_t_half_log(T, n + 6);
  return out;
}

}  // namespace apoint
