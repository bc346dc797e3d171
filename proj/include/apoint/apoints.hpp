#pragma once

#include <string>
#include <vector>

#include "apoint/complex_point.hpp"
#include "apoint/zeta.hpp"

namespace apoint {

/// A located root rho_a = beta + i gamma of zeta(s) - a.
struct APoint {
  cplx a;
  double beta;
  double gamma;
  double residual;  // |zeta(rho_a) - a|

  cplx rho() const { return {beta, gamma}; }
};

/// Rectangle sigma_low < Re s < sigma_high, t_low < Im s <= t_high.
struct ScanWindow {
  double t_low;
  double t_high;
  double sigma_low = -1.0;
  double sigma_high = 6.0;

  void validate() const;
};

/// Default right edge for level a: max(6, 2 + log2(1 + |a|) + 2).
double default_sigma_high(cplx a);
/// Window over t in (t_low, t_high] with the default sigma extent for a.
ScanWindow default_window(cplx a, double t_low, double t_high);

struct ScanOptions {
  double initial_step = 0.05;      // first panel length on every edge
  double panel_tolerance = 1e-5;   // step-halving acceptance per initial panel
  double min_panel = 1e-11;
  double proximity = 1e-6;         // closest allowed approach of a root to an edge
  double max_defect = 0.25;        // |raw winding - nearest integer| bound
  double subwindow_height = 4.0;   // independent scan unit along t
  int max_nudges = 5;
  int threads = 0;                 // 0: OpenMP default
  EvalOptions eval{};
};

struct ScanResult {
  std::vector<APoint> points;  // sorted by gamma
  int count = 0;               // rounded winding number of the whole window
  double defect = 0.0;         // |raw - count|
  ScanWindow effective;        // window after boundary nudges
  int nudges = 0;
  long evaluations = 0;
};

/// Winding number of zeta - a around the window (argument principle).
int count_apoints(cplx a, const ScanWindow& w, const ScanOptions& opts = {});

/// All a-points inside the window, refined by Newton to residual < 1e-9.
std::vector<APoint> locate_apoints(cplx a, const ScanWindow& w, const ScanOptions& opts = {});

/// Count and locate in one pass, reporting the nudged window that was used.
ScanResult scan_apoints(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts = {});

/// Main term (T/2pi) log(T/(2 pi e c_a)) of the a-point counting function,
/// c_a = 2 for a = 1 and 1 otherwise.
double expected_count(cplx a, double t);

struct TrivialAPoint {
  int k;
  bool found;
  APoint point;  // valid when found
  double distance;  // |rho - (-2k)| when found
  std::string message;  // failure reason when not found
};

/// The a-point near s = -2k for each k in [k_min, k_max], Newton-seeded at -2k
/// and accepted only inside the disk |s + 2k| < 0.5.
std::vector<TrivialAPoint> trivial_apoints(cplx a, int k_min, int k_max, const EvalOptions& opts = {});

inline constexpr double kResidualBound = 1e-9;
inline constexpr double kTrivialDiskRadius = 0.5;

}  // namespace apoint
