#include "apoint/apoints.hpp"

#include <cmath>
#include <sstream>

#include "apoint/contour.hpp"
#include "apoint/kernels.hpp"

namespace apoint {

void ScanWindow::validate() const {
  if (!std::isfinite(t_low) || !std::isfinite(t_high) || !std::isfinite(sigma_low) || !std::isfinite(sigma_high)) {
    throw Error(ErrorKind::domain, "scan window bounds must be finite");
  }
  if (!(t_low < t_high)) throw Error(ErrorKind::domain, "scan window needs t_low < t_high");
  if (!(sigma_low < sigma_high)) throw Error(ErrorKind::domain, "scan window needs sigma_low < sigma_high");
  if (t_high > kMaxHeight || t_low < -kMaxHeight) {
    throw Error(ErrorKind::cutoff_overflow, "scan window exceeds the supported height");
  }
}

double default_sigma_high(cplx a) { return std::max(6.0, 2.0 + std::log2(1.0 + std::abs(a)) + 2.0); }

ScanWindow default_window(cplx a, double t_low, double t_high) {
  return ScanWindow{t_low, t_high, -1.0, default_sigma_high(a)};
}

ScanResult scan_apoints(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts) {
  opts.eval.validate();
  return parallel::scan_window(a, w, locate, opts);
}

int count_apoints(cplx a, const ScanWindow& w, const ScanOptions& opts) {
  return scan_apoints(a, w, false, opts).count;
}

std::vector<APoint> locate_apoints(cplx a, const ScanWindow& w, const ScanOptions& opts) {
  return scan_apoints(a, w, true, opts).points;
}

double expected_count(cplx a, double t) {
  const double c_a = std::abs(a - 1.0) < 1e-12 ? 2.0 : 1.0;
  return t / kTwoPi * std::log(t / (kTwoPi * std::exp(1.0) * c_a));
}

std::vector<TrivialAPoint> trivial_apoints(cplx a, int k_min, int k_max, const EvalOptions& opts) {
  opts.validate();
  if (k_min < 1 || k_max < k_min) throw Error(ErrorKind::domain, "need 1 <= kmin <= kmax");
  std::vector<TrivialAPoint> out;
  for (int k = k_min; k <= k_max; ++k) {
    const cplx centre(-2.0 * k, 0.0);
    TrivialAPoint entry{k, false, APoint{a, 0.0, 0.0, 0.0}, 0.0, {}};
    const auto p = newton_refine(a, centre, opts);
    if (!p) {
      entry.message = "newton did not converge from s = " + std::to_string(-2 * k);
    } else if (const double dist = std::abs(p->rho() - centre); !(dist < kTrivialDiskRadius)) {
      std::ostringstream os;
      os.precision(12);
      os << "newton left the disk |s + " << 2 * k << "| < 0.5, converged to " << format_complex(p->rho());
      entry.message = os.str();
    } else {
      entry.found = true;
      entry.point = *p;
      entry.distance = dist;
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace apoint
