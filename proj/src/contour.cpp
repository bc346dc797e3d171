#include "apoint/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apoint {

namespace {

struct Sample {
  cplx z;
  cplx g;       // f'/f
  double dist;  // |f/f'|, distance-to-root estimate
};

Sample sample_at(cplx a, cplx z, const EvalOptions& eval) {
  std::array<cplx, 2> d;
  zeta_derivs(z, 1, d, eval);
  const cplx f = d[0] - a;
  const double af = std::abs(f);
  const double ad = std::abs(d[1]);
  if (af == 0.0) return {z, cplx{0.0, 0.0}, 0.0};
  return {z, d[1] / f, ad == 0.0 ? INFINITY : af / ad};
}

std::string describe(cplx from, cplx to) {
  std::ostringstream os;
  os.precision(12);
  os << "segment " << format_complex(from) << " -> " << format_complex(to);
  return os.str();
}

struct EdgeState {
  cplx a;
  cplx ref;
  const ScanOptions* opts;
  double tol_per_length;
  std::array<cplx, 3> acc{};
  double min_dist = INFINITY;
  long evals = 0;
  cplx from, to;

  Sample eval(cplx z) {
    ++evals;
    Sample s = sample_at(a, z, opts->eval);
    min_dist = std::min(min_dist, s.dist);
    if (s.dist < opts->proximity) {
      throw Error(ErrorKind::boundary_proximity,
                  "root within " + std::to_string(opts->proximity) + " of " + describe(from, to));
    }
    return s;
  }

  static std::array<cplx, 3> weights(const Sample& s, cplx ref) {
    const cplx w = s.z - ref;
    return {s.g, s.g * w, s.g * w * w};
  }

  // Trapezoid on [p, q] against its two-panel refinement; accept the
  // Richardson combination once the two agree, otherwise halve.
  void panel(const Sample& p, const Sample& q, const std::array<cplx, 3>& wp,
             const std::array<cplx, 3>& wq, int depth) {
    const cplx h = q.z - p.z;
    const double len = std::abs(h);
    const Sample m = eval(0.5 * (p.z + q.z));
    const auto wm = weights(m, ref);
    std::array<cplx, 3> coarse, fine;
    for (int j = 0; j < 3; ++j) {
      coarse[j] = 0.5 * h * (wp[j] + wq[j]);
      fine[j] = 0.25 * h * (wp[j] + 2.0 * wm[j] + wq[j]);
    }
    const double err = std::abs(fine[0] - coarse[0]);
    if (err <= tol_per_length * len) {
      for (int j = 0; j < 3; ++j) acc[j] += (4.0 * fine[j] - coarse[j]) / 3.0;
      return;
    }
    if (0.5 * len < opts->min_panel || depth > 60) {
      throw Error(ErrorKind::quadrature_nonconvergence, "panel refinement stalled on " + describe(from, to));
    }
    panel(p, m, wp, wm, depth + 1);
    panel(m, q, wm, wq, depth + 1);
  }
};

}  // namespace

EdgeIntegral EdgeIntegral::reversed() const {
  EdgeIntegral r = *this;
  std::swap(r.from, r.to);
  for (auto& m : r.moments) m = -m;
  return r;
}

std::array<cplx, 3> EdgeIntegral::moments_about(cplx c) const {
  const cplx d = ref - c;
  return {moments[0], moments[1] + d * moments[0], moments[2] + 2.0 * d * moments[1] + d * d * moments[0]};
}

EdgeIntegral integrate_edge(cplx a, cplx from, cplx to, const ScanOptions& opts) {
  EdgeIntegral out;
  out.from = from;
  out.to = to;
  out.ref = 0.5 * (from + to);
  const double length = std::abs(to - from);
  if (length == 0.0) {
    out.min_root_distance = INFINITY;
    return out;
  }

  EdgeState st{a, out.ref, &opts, opts.panel_tolerance / opts.initial_step, {}, INFINITY, 0, from, to};
  const int panels = std::max(1, static_cast<int>(std::ceil(length / opts.initial_step)));
  Sample prev = st.eval(from);
  auto wprev = EdgeState::weights(prev, out.ref);
  for (int k = 1; k <= panels; ++k) {
    const cplx z = k == panels ? to : from + (to - from) * (static_cast<double>(k) / panels);
    const Sample next = st.eval(z);
    const auto wnext = EdgeState::weights(next, out.ref);
    st.panel(prev, next, wprev, wnext, 0);
    prev = next;
    wprev = wnext;
  }
  out.moments = st.acc;
  out.min_root_distance = st.min_dist;
  out.evaluations = st.evals;
  return out;
}

SettledCut settle_cut(cplx a, double t, double sigma_low, double sigma_high, double nudge,
                      const ScanOptions& opts) {
  double tt = t;
  for (int attempt = 0;; ++attempt) {
    try {
      return {tt, attempt, integrate_edge(a, {sigma_low, tt}, {sigma_high, tt}, opts)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::boundary_proximity || attempt >= opts.max_nudges) throw;
      tt += nudge;
    }
  }
}

std::optional<APoint> newton_refine(cplx a, cplx seed, const EvalOptions& eval, int max_iter) {
  cplx s = seed;
  std::array<cplx, 2> d;
  for (int it = 0; it < max_iter; ++it) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || std::abs(s.imag()) > kMaxHeight ||
        std::abs(s.real()) > 100.0) {
      return std::nullopt;
    }
    try {
      zeta_derivs(s, 1, d, eval);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (d[1] == cplx{0.0, 0.0}) return std::nullopt;
    cplx step = (d[0] - a) / d[1];
    // Damp wild first steps so a poor seed cannot jump across many roots.
    if (std::abs(step) > 1.0) step /= std::abs(step);
    s -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(s))) break;
  }
  try {
    zeta_derivs(s, 0, std::span<cplx>(d.data(), 1), eval);
  } catch (const Error&) {
    return std::nullopt;
  }
  const double residual = std::abs(d[0] - a);
  if (!(residual < kResidualBound)) return std::nullopt;
  return APoint{a, s.real(), s.imag(), residual};
}

namespace {

std::string describe(const Box& b) {
  std::ostringstream os;
  os.precision(12);
  os << "box sigma [" << b.sigma_low << ", " << b.sigma_high << "] t [" << b.t_low << ", " << b.t_high << "]";
  return os.str();
}

struct BoxScanner {
  cplx a;
  const ScanOptions& opts;
  long evals = 0;
  std::vector<APoint> found;

  EdgeIntegral edge(cplx from, cplx to) {
    EdgeIntegral e = integrate_edge(a, from, to, opts);
    evals += e.evaluations;
    return e;
  }

  static cplx winding(const EdgeIntegral& bottom, const EdgeIntegral& right, const EdgeIntegral& top,
                      const EdgeIntegral& left) {
    // bottom and top run left to right, right and left run bottom to top.
    return (bottom.moments[0] + right.moments[0] - top.moments[0] - left.moments[0]) / cplx(0.0, kTwoPi);
  }

  // Roots from the power sums p1 = sum (rho - c), p2 = sum (rho - c)^2.
  std::vector<cplx> seeds(int count, const Box& box, const EdgeIntegral& bottom, const EdgeIntegral& right,
                          const EdgeIntegral& top, const EdgeIntegral& left) const {
    const cplx c = box.center();
    std::array<cplx, 3> m{};
    const auto mb = bottom.moments_about(c), mr = right.moments_about(c), mt = top.moments_about(c),
               ml = left.moments_about(c);
    for (int j = 0; j < 3; ++j) m[j] = (mb[j] + mr[j] - mt[j] - ml[j]) / cplx(0.0, kTwoPi);
    if (count == 1) return {c + m[1]};
    const cplx e1 = m[1];
    const cplx e2 = 0.5 * (m[1] * m[1] - m[2]);
    const cplx disc = std::sqrt(e1 * e1 - 4.0 * e2);
    return {c + 0.5 * (e1 + disc), c + 0.5 * (e1 - disc)};
  }

  bool try_locate(int count, const Box& box, const std::vector<cplx>& seed_list) {
    std::vector<APoint> pts;
    for (cplx seed : seed_list) {
      auto p = newton_refine(a, seed, opts.eval);
      if (!p || !box.contains(p->rho())) return false;
      for (const auto& q : pts) {
        if (std::abs(q.rho() - p->rho()) <= 1e-6) return false;
      }
      pts.push_back(*p);
    }
    if (static_cast<int>(pts.size()) != count) return false;
    found.insert(found.end(), pts.begin(), pts.end());
    return true;
  }

  // Nudged cut position: tries the midpoint, then symmetric offsets.
  double cut_offset(int attempt, double span) const {
    static constexpr std::array<double, 6> kOffsets = {0.0, 0.1, -0.1, 0.2, -0.2, 0.3};
    return kOffsets[static_cast<std::size_t>(attempt)] * span;
  }

  void split(const Box& box, const EdgeIntegral& bottom, const EdgeIntegral& right, const EdgeIntegral& top,
             const EdgeIntegral& left, int count) {
    const double height = box.t_high - box.t_low;
    const double width = box.sigma_high - box.sigma_low;
    if (std::max(height, width) < 1e-6) {
      throw Error(ErrorKind::multiple_root, describe(box) + " still holds " + std::to_string(count) + " points");
    }
    // Split along t while boxes are tall; points sharing an ordinate need a
    // split along sigma instead.
    const bool along_t = height >= 1e-2 * width;
    for (int attempt = 0; attempt <= opts.max_nudges; ++attempt) {
      try {
        if (along_t) {
          const double tm = 0.5 * (box.t_low + box.t_high) + cut_offset(attempt, height);
          const EdgeIntegral cut = edge({box.sigma_low, tm}, {box.sigma_high, tm});
          const Box lower{box.sigma_low, box.sigma_high, box.t_low, tm};
          const Box upper{box.sigma_low, box.sigma_high, tm, box.t_high};
          const EdgeIntegral rl = edge({box.sigma_high, box.t_low}, {box.sigma_high, tm});
          const EdgeIntegral ll = edge({box.sigma_low, box.t_low}, {box.sigma_low, tm});
          const EdgeIntegral ru = edge({box.sigma_high, tm}, {box.sigma_high, box.t_high});
          const EdgeIntegral lu = edge({box.sigma_low, tm}, {box.sigma_low, box.t_high});
          scan(lower, bottom, rl, cut, ll);
          scan(upper, cut, ru, top, lu);
        } else {
          const double sm = 0.5 * (box.sigma_low + box.sigma_high) + cut_offset(attempt, width);
          const EdgeIntegral cut = edge({sm, box.t_low}, {sm, box.t_high});
          const Box west{box.sigma_low, sm, box.t_low, box.t_high};
          const Box east{sm, box.sigma_high, box.t_low, box.t_high};
          const EdgeIntegral bw = edge({box.sigma_low, box.t_low}, {sm, box.t_low});
          const EdgeIntegral be = edge({sm, box.t_low}, {box.sigma_high, box.t_low});
          const EdgeIntegral tw = edge({box.sigma_low, box.t_high}, {sm, box.t_high});
          const EdgeIntegral te = edge({sm, box.t_high}, {box.sigma_high, box.t_high});
          scan(west, bw, cut, tw, left);
          scan(east, be, right, te, cut);
        }
        return;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::boundary_proximity || attempt == opts.max_nudges) throw;
      }
    }
  }

  void scan(const Box& box, const EdgeIntegral& bottom, const EdgeIntegral& right, const EdgeIntegral& top,
            const EdgeIntegral& left) {
    const cplx raw = winding(bottom, right, top, left);
    const double rounded = std::round(raw.real());
    const double defect = std::abs(raw - cplx(rounded, 0.0));
    if (defect >= opts.max_defect) {
      throw Error(ErrorKind::quadrature_nonconvergence,
                  describe(box) + " winding defect " + std::to_string(defect));
    }
    const int count = static_cast<int>(rounded);
    if (count < 0) {
      throw Error(ErrorKind::quadrature_nonconvergence, describe(box) + " negative winding number");
    }
    if (count == 0) return;
    const std::size_t before = found.size();
    if (count <= 2 && try_locate(count, box, seeds(count, box, bottom, right, top, left))) return;
    found.resize(before);
    if (count == 1 && try_locate(1, box, {box.center()})) return;
    found.resize(before);
    split(box, bottom, right, top, left, count);
  }
};

}  // namespace

SubwindowResult scan_box(cplx a, const Box& box, const EdgeIntegral& bottom, const EdgeIntegral& top,
                         bool locate, const ScanOptions& opts) {
  BoxScanner scanner{a, opts, 0, {}};
  const EdgeIntegral right = scanner.edge({box.sigma_high, box.t_low}, {box.sigma_high, box.t_high});
  const EdgeIntegral left = scanner.edge({box.sigma_low, box.t_low}, {box.sigma_low, box.t_high});
  SubwindowResult out;
  out.raw = BoxScanner::winding(bottom, right, top, left);
  const double rounded = std::round(out.raw.real());
  if (std::abs(out.raw - cplx(rounded, 0.0)) >= opts.max_defect) {
    throw Error(ErrorKind::quadrature_nonconvergence,
                describe(box) + " winding defect " + std::to_string(std::abs(out.raw - cplx(rounded, 0.0))));
  }
  out.count = static_cast<int>(rounded);
  if (locate) {
    scanner.scan(box, bottom, right, top, left);
    std::sort(scanner.found.begin(), scanner.found.end(),
              [](const APoint& p, const APoint& q) { return p.gamma < q.gamma; });
    if (static_cast<int>(scanner.found.size()) != out.count) {
      throw Error(ErrorKind::newton_divergence, describe(box) + " located " +
                                                    std::to_string(scanner.found.size()) + " of " +
                                                    std::to_string(out.count) + " points");
    }
    out.points = std::move(scanner.found);
  }
  out.evaluations = scanner.evals;
  return out;
}

}  // namespace apoint
