#pragma once

#include <array>
#include <optional>
#include <vector>

#include "apoint/apoints.hpp"

namespace apoint {

/// Integrals of g(s) (s - ref)^j ds, j = 0, 1, 2, along a straight segment,
/// with g = zeta'/(zeta - a).
struct EdgeIntegral {
  cplx from;
  cplx to;
  cplx ref;
  std::array<cplx, 3> moments{};
  double min_root_distance = 0.0;  // smallest |f/f'| among the samples
  long evaluations = 0;

  EdgeIntegral reversed() const;
  /// Moments re-expanded about c.
  std::array<cplx, 3> moments_about(cplx c) const;
};

/// Adaptive trapezoid quadrature with step halving and Richardson acceptance.
/// Throws boundary_proximity when a root is within opts.proximity of the
/// segment, quadrature_nonconvergence when panels shrink below opts.min_panel.
EdgeIntegral integrate_edge(cplx a, cplx from, cplx to, const ScanOptions& opts);

/// Horizontal segment at height t from sigma_low to sigma_high, shifted by
/// `nudge` up to opts.max_nudges times while a root sits on it.
struct SettledCut {
  double t;
  int nudges;
  EdgeIntegral edge;
};
SettledCut settle_cut(cplx a, double t, double sigma_low, double sigma_high, double nudge,
                      const ScanOptions& opts);

struct Box {
  double sigma_low;
  double sigma_high;
  double t_low;
  double t_high;

  cplx center() const { return {0.5 * (sigma_low + sigma_high), 0.5 * (t_low + t_high)}; }
  bool contains(cplx z) const {
    return z.real() > sigma_low && z.real() < sigma_high && z.imag() > t_low && z.imag() <= t_high;
  }
};

struct SubwindowResult {
  std::vector<APoint> points;
  cplx raw{0.0, 0.0};  // (1/2 pi i) * contour integral
  int count = 0;
  long evaluations = 0;
};

/// Scan one box whose bottom and top edges (left to right) are already known.
/// With locate = false only the winding number is computed.
SubwindowResult scan_box(cplx a, const Box& box, const EdgeIntegral& bottom, const EdgeIntegral& top,
                         bool locate, const ScanOptions& opts);

/// Newton iteration s <- s - (zeta(s) - a)/zeta'(s) from the seed. Returns
/// nullopt unless the residual drops below kResidualBound.
std::optional<APoint> newton_refine(cplx a, cplx seed, const EvalOptions& eval, int max_iter = 60);

}  // namespace apoint
