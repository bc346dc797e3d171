#pragma once

#include <span>

#include "apoint/complex_point.hpp"

namespace apoint {

/// Tuning of the Euler-Maclaurin continuation. The cutoff is
/// N = ceil(|t|) + em_terms_base, followed by em_bernoulli_order correction
/// terms.
struct EvalOptions {
  int em_terms_base = 20;
  int em_bernoulli_order = 8;
  int deriv_order_max = 4;

  void validate() const;
};

/// Coefficients of zeta(s) = 1/(s-1) + c0 + c1 (s-1) + ...
struct LaurentConstants {
  double c0;
  double c1;
};

/// Largest |Im s| the cutoff policy supports.
inline constexpr double kMaxHeight = 1.0e4;
/// Largest derivative order any routine accepts.
inline constexpr int kMaxDerivOrder = 6;
/// Below this abscissa zeta is evaluated through the functional equation.
inline constexpr double kReflectBelow = -3.0;

cplx zeta(ComplexPoint s, const EvalOptions& opts = {});
cplx zeta_deriv(ComplexPoint s, int n, const EvalOptions& opts = {});

/// zeta and its derivatives 0..order at s, written to out[0..order].
/// This is the hot-path entry point used by the scanners and sums.
void zeta_derivs(cplx s, int order, std::span<cplx> out, const EvalOptions& opts = {});

/// chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s), evaluated in log space.
cplx chi(ComplexPoint s);

/// chi and its derivatives 0..order; only the sine form (Re s < 1/2) is
/// supported for order > 0.
void chi_derivs(cplx s, int order, std::span<cplx> out);

cplx log_deriv_zeta(ComplexPoint s, const EvalOptions& opts = {});

/// xi'/xi(s) = 1/s + 1/(s-1) - log(pi)/2 + psi(s/2)/2 + zeta'/zeta(s).
cplx xi_log_deriv(ComplexPoint s, const EvalOptions& opts = {});

/// Euler's constant and minus the first Stieltjes constant. Values are frozen;
/// tests reproduce them from independent limits.
constexpr LaurentConstants laurent_constants() {
  return {0.57721566490153286061, 0.07281584548367672486};
}

}  // namespace apoint
