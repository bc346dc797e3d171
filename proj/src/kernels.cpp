#include "apoint/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "apoint/contour.hpp"

namespace apoint {

namespace {

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

cplx ordered_total(const std::vector<cplx>& blocks) {
  cplx total{0.0, 0.0};
  for (const cplx& b : blocks) total += b;
  return total;
}

struct PairSumInput {
  std::span<const cplx> f, g, h;
  std::vector<cplx> prefix;  // prefix sums of g when h is absent
  std::size_t x;

  PairSumInput(std::span<const cplx> f_, std::span<const cplx> g_, std::span<const cplx> h_)
      : f(f_), g(g_), h(h_), x(f_.empty() ? 0 : f_.size() - 1) {
    if (g.size() != f.size() || (!h.empty() && h.size() != f.size())) {
      throw Error(ErrorKind::domain, "pair_sum arrays must share the range 0..x");
    }
    if (h.empty()) {
      prefix.assign(g.size(), cplx{0.0, 0.0});
      for (std::size_t r = 1; r < g.size(); ++r) prefix[r] = prefix[r - 1] + g[r];
    }
  }

  cplx term(std::size_t m) const {
    if (f[m] == cplx{0.0, 0.0}) return {0.0, 0.0};
    const std::size_t rmax = x / m;
    if (h.empty()) return f[m] * prefix[rmax];
    cplx inner{0.0, 0.0};
    for (std::size_t r = 1; r <= rmax; ++r) inner += g[r] * h[m * r];
    return f[m] * inner;
  }

  cplx block(std::size_t b) const {
    const std::size_t lo = std::max<std::size_t>(1, b * kReductionBlock);
    const std::size_t hi = std::min(x + 1, (b + 1) * kReductionBlock);
    cplx acc{0.0, 0.0};
    for (std::size_t m = lo; m < hi; ++m) acc += term(m);
    return acc;
  }
};

cplx point_term(const APoint& p, const PointSumSpec& spec) {
  std::array<cplx, kMaxDerivOrder + 1> d;
  const cplx rho = p.rho();
  zeta_derivs(rho + cplx(0.0, spec.delta), spec.n, d, spec.eval);
  return d[static_cast<std::size_t>(spec.n)] * std::exp(rho * std::log(spec.x_base));
}

cplx point_block(std::span<const APoint> points, std::size_t b, const PointSumSpec& spec) {
  const std::size_t lo = b * kReductionBlock;
  const std::size_t hi = std::min(points.size(), lo + kReductionBlock);
  cplx acc{0.0, 0.0};
  for (std::size_t i = lo; i < hi; ++i) acc += point_term(points[i], spec);
  return acc;
}

void check_point_spec(const PointSumSpec& spec) {
  if (spec.n < 0 || spec.n > kMaxDerivOrder) throw Error(ErrorKind::domain, "derivative order out of range");
  if (!(spec.x_base > 0.0)) throw Error(ErrorKind::domain, "X must be positive");
}

// Boundaries of the independent scan units, before nudging.
struct ScanPlan {
  double sigma_low, sigma_high;
  double t_low, t_high;
  double nudge;
  std::vector<double> interior;  // cut heights strictly between t_low and t_high
};

// Horizontal edges through the pole at s = 1 are impossible, so the bottom
// edge never goes below this height.
constexpr double kLowestEdge = 0.1;

ScanPlan make_plan(const ScanWindow& w, const ScanOptions& opts) {
  w.validate();
  if (!(opts.subwindow_height > 0.0)) throw Error(ErrorKind::domain, "subwindow height must be positive");
  ScanPlan plan{w.sigma_low, w.sigma_high, std::max(w.t_low, kLowestEdge), w.t_high, 0.0, {}};
  if (plan.t_high <= plan.t_low) {
    throw Error(ErrorKind::domain, "window lies below the lowest supported edge height");
  }
  plan.nudge = 0.01 / std::log(std::max(plan.t_high, std::exp(1.0)));
  const double h = opts.subwindow_height;
  for (double t = plan.t_low + h; t < plan.t_high - 0.5 * h; t += h) plan.interior.push_back(t);
  return plan;
}

template <class Loop>
void run_guarded(std::size_t n, Loop&& body, bool parallel, int threads) {
  std::vector<std::exception_ptr> errors(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  // Report the failure of the lowest unit so the message does not depend on
  // scheduling.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ScanResult scan_impl(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts, bool parallel) {
  const ScanPlan plan = make_plan(w, opts);
  const int threads = resolve_threads(opts.threads);

  // Cuts: bottom, interior..., top. The bottom edge moves down and every other
  // edge moves up when a point sits on it.
  const std::size_t ncut = plan.interior.size() + 2;
  std::vector<SettledCut> cuts(ncut);
  run_guarded(
      ncut,
      [&](std::size_t i) {
        double t;
        double nudge = plan.nudge;
        if (i == 0) {
          t = plan.t_low;
          nudge = -plan.nudge;
        } else if (i + 1 == ncut) {
          t = plan.t_high;
        } else {
          t = plan.interior[i - 1];
        }
        cuts[i] = settle_cut(a, t, plan.sigma_low, plan.sigma_high, nudge, opts);
      },
      parallel, threads);

  std::vector<SubwindowResult> parts(ncut - 1);
  run_guarded(
      ncut - 1,
      [&](std::size_t i) {
        const Box box{plan.sigma_low, plan.sigma_high, cuts[i].t, cuts[i + 1].t};
        parts[i] = scan_box(a, box, cuts[i].edge, cuts[i + 1].edge, locate, opts);
      },
      parallel, threads);

  ScanResult out;
  out.effective = ScanWindow{cuts.front().t, cuts.back().t, plan.sigma_low, plan.sigma_high};
  cplx raw{0.0, 0.0};
  for (const auto& c : cuts) {
    out.nudges += c.nudges;
    out.evaluations += c.edge.evaluations;
  }
  for (auto& p : parts) {
    raw += p.raw;
    out.count += p.count;
    out.evaluations += p.evaluations;
    out.points.insert(out.points.end(), p.points.begin(), p.points.end());
  }
  out.defect = std::abs(raw - cplx(out.count, 0.0));
  if (out.defect >= opts.max_defect) {
    throw Error(ErrorKind::quadrature_nonconvergence, "window winding defect " + std::to_string(out.defect));
  }
  return out;
}

}  // namespace

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

namespace serial {

cplx pair_sum(std::span<const cplx> f, std::span<const cplx> g, std::span<const cplx> h) {
  const PairSumInput in(f, g, h);
  std::vector<cplx> blocks(block_count(in.x + 1));
  for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] = in.block(b);
  return ordered_total(blocks);
}

cplx point_sum(std::span<const APoint> points, const PointSumSpec& spec) {
  check_point_spec(spec);
  std::vector<cplx> blocks(block_count(points.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] = point_block(points, b, spec);
  return ordered_total(blocks);
}

ScanResult scan_window(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts) {
  return scan_impl(a, w, locate, opts, false);
}

}  // namespace serial

namespace parallel {

cplx pair_sum(std::span<const cplx> f, std::span<const cplx> g, std::span<const cplx> h) {
  const PairSumInput in(f, g, h);
  std::vector<cplx> blocks(block_count(in.x + 1));
  const auto nb = static_cast<std::ptrdiff_t>(blocks.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t b = 0; b < nb; ++b) blocks[static_cast<std::size_t>(b)] = in.block(static_cast<std::size_t>(b));
  return ordered_total(blocks);
}

cplx point_sum(std::span<const APoint> points, const PointSumSpec& spec) {
  check_point_spec(spec);
  std::vector<cplx> blocks(block_count(points.size()));
  const auto nb = static_cast<std::ptrdiff_t>(blocks.size());
  std::vector<std::exception_ptr> errors(blocks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    try {
      blocks[ub] = point_block(points, ub, spec);
    } catch (...) {
      errors[ub] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return ordered_total(blocks);
}

ScanResult scan_window(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts) {
  return scan_impl(a, w, locate, opts, true);
}

}  // namespace parallel

}  // namespace apoint
