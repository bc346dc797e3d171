#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apoint/apoints.hpp"
#include "apoint/arith.hpp"

namespace apoint {

/// (a, X, alpha, tau, T) with delta = 2 pi alpha / log(T / (2 pi X)).
/// alpha = 0 encodes the delta -> 0 limit.
struct SumParams {
  cplx a{0.0, 0.0};
  double X = 1.0;
  double alpha = 0.0;
  double tau = 1.0;
  double T = 100.0;
  double delta = 0.0;

  static SumParams make(cplx a, double X, double alpha, double tau, double T);
  /// Throws domain when T/(2 pi X) <= e, X <= 0 or tau < |delta| + 1.
  void validate() const;
  double x() const { return T / (kTwoPi * X); }
};

/// Named main terms of an explicit formula. error_scale is the size of the
/// formula's error term; alt_error_scale is the conditional (RH) branch when
/// the formula has one, else 0.
struct TermBreakdown {
  std::vector<std::string> labels;
  std::vector<cplx> values;
  cplx total{0.0, 0.0};
  double error_scale = 1.0;
  double alt_error_scale = 0.0;

  void add(std::string label, cplx value);
};

struct VerificationRow {
  double T;
  double T_effective;
  cplx lhs;
  cplx rhs;
  double abs_dev;
  double norm_dev;
  double rel_dev;
};

VerificationRow make_row(double T, double T_effective, cplx lhs, const TermBreakdown& rhs);

/// Shared sieve sized by sieve_limit_from_env(); built on first use.
const SieveTable& shared_sieve();

/// sum over points of zeta^(n)(rho + i delta) X^rho. Every gamma must lie in
/// (tau, T].
cplx lhs_sum(std::span<const APoint> points, const SumParams& p, int n = 1);

TermBreakdown theorem1_rhs(const SumParams& p);
TermBreakdown fujii_weighted_rhs(double X, double T);
TermBreakdown fujii_zero_sum_rhs(double T);

cplx z_delta(double x, double delta);
TermBreakdown corollary2_rhs(const SumParams& p);

/// Residue form that actually matches sum Lambda(r) r^{-i delta} log r:
/// (zeta'/zeta)'(1+i delta) + x^{-i delta}/(1-i delta) {zeta'(1-i delta)
/// + zeta(1-i delta)(log x - 1/(1-i delta))}.
cplx z_delta_corrected(double x, double delta);
/// corollary2_rhs with the z_delta group replaced by +X^{-i delta} (T/2pi) z_delta_corrected.
TermBreakdown corollary2_corrected_rhs(const SumParams& p);

cplx k_delta_1(double x, double delta, double X);
cplx k_delta_2(double x, double delta);
TermBreakdown theorem3_rhs(const SumParams& p, cplx zero_sum);
TermBreakdown corollary_jm_rhs(cplx a, double X, double T);
/// The earlier a-point statement: zero_sum - a (T/2pi)(log^2 - 2 log + 2).
/// Kept only for side-by-side tables.
TermBreakdown legacy_jm_rhs(cplx a, double T, cplx zero_sum);

cplx l_sum_direct(double x, double delta);
TermBreakdown l_sum_residue(double x, double delta);
/// Residues of zeta(s) (zeta'/zeta)'(s - i delta) x^s / s, the generating
/// function whose coefficients are those of l_sum_direct.
TermBreakdown l_sum_residue_corrected(double x, double delta);
std::pair<cplx, TermBreakdown> fujii_estimate_pair(double x, double delta);

double a1_sum(int k, int n, double T);
double a2_sum(int k, int n, double T);
TermBreakdown theorem_nderiv_rhs(cplx a, int n, double T, cplx zero_nderiv_sum);

/// Error envelopes.
double scale_t_half_log(double T, int power);  // T^{1/2} log^power T
double scale_unconditional(double T);          // T exp(-sqrt(log T))
double scale_rh(double T);                     // T^{1/2}

}  // namespace apoint
