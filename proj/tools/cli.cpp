#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "apoint/apoints.hpp"
#include "apoint/formulas.hpp"
#include "apoint/report.hpp"

namespace apoint::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string a_text = "0";
  cplx a{0.0, 0.0};
  std::string x_text = "1";
  std::vector<double> xs{1.0};
  double alpha = 0.0;
  std::optional<double> tau;
  double T = 100.0;
  std::string ladder_text;
  std::vector<double> ladder;
  std::string id;
  int kmin = 1;
  int kmax = 1;
  std::string out_path;
  std::string format = "csv";
  long long seed = 0;
  int threads = 0;
  int n = 1;
  double delta = 0.0;
  double x = 0.0;
  double sigma_low = -1.0;
  std::optional<double> sigma_high;
};

const std::vector<std::string> kFormulaIds = {
    "fujii-zero", "fujii-weighted", "theorem1",  "corollary2",          "corollary2-corrected", "theorem3",
    "corollary-jm", "legacy-jm",    "residue-L", "residue-L-corrected", "fujii-estimate",       "nderiv"};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::domain, std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::domain, std::string("empty ") + what);
  return out;
}

cplx parse_level(const std::string& text) {
  const auto v = parse_list(text, "--a");
  if (v.size() > 2) throw Error(ErrorKind::domain, "--a takes re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

bool uses_delta(const std::string& id) {
  return id == "theorem1" || id == "corollary2" || id == "corollary2-corrected" || id == "theorem3";
}

bool uses_x_ladder(const std::string& id) {
  return id == "residue-L" || id == "residue-L-corrected" || id == "fujii-estimate";
}

double default_tau(const std::string& id) {
  if (uses_delta(id)) return 2.0;
  if (id == "corollary-jm" || id == "legacy-jm" || id == "nderiv") return 1.0;
  return 0.0;
}

nlohmann::json meta_of(const RunConfig& c) {
  return {{"command", c.command}, {"id", c.id},        {"a_re", c.a.real()}, {"a_im", c.a.imag()},
          {"alpha", c.alpha},     {"T", c.T},          {"seed", c.seed},     {"threads", c.threads},
          {"X", c.xs},            {"ladder", c.ladder}, {"tau", c.tau.value_or(default_tau(c.id))},
          {"sieve_limit", sieve_limit_from_env()}};
}

void emit(const RunConfig& c, const Table& t, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) throw Error(ErrorKind::domain, "cannot open " + c.out_path);
    os = &file;
  }
  if (c.format == "json") {
    *os << table_to_json(t, meta_of(c)).dump(2) << '\n';
  } else {
    write_csv(*os, t);
  }
}

ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.threads = c.threads;
  return o;
}

ScanWindow window_of(const RunConfig& c, double t_low, double t_high) {
  ScanWindow w = default_window(c.a, t_low, t_high);
  w.sigma_low = c.sigma_low;
  if (c.sigma_high) w.sigma_high = *c.sigma_high;
  return w;
}

// Located points per level, scanned once from the bottom of the strip up to
// the largest height any step needs.
class PointCache {
 public:
  PointCache(const RunConfig& c, double t_max) : cfg_(c), t_max_(t_max) {}

  const ScanResult& level(cplx a) {
    for (auto& [lv, res] : cache_) {
      if (lv == a) return res;
    }
    RunConfig c = cfg_;
    c.a = a;
    cache_.emplace_back(a, scan_apoints(a, window_of(c, 0.0, t_max_), true, scan_options(c)));
    return cache_.back().second;
  }

  // T itself unless a located ordinate lies within 1e-6, then shifted up by
  // 0.01 / log T per attempt.
  double effective_height(cplx a, double T) {
    const ScanResult& r = level(a);
    if (T >= t_max_) return r.effective.t_high;
    double t = T;
    for (int attempt = 0; attempt <= ScanOptions{}.max_nudges; ++attempt) {
      const bool clear = std::none_of(r.points.begin(), r.points.end(),
                                      [t](const APoint& p) { return std::abs(p.gamma - t) < 1e-6; });
      if (clear) return t;
      t += 0.01 / std::log(T);
    }
    throw Error(ErrorKind::boundary_proximity, "could not move T = " + std::to_string(T) + " off the ordinates");
  }

  std::vector<APoint> between(cplx a, double lo, double hi) {
    std::vector<APoint> out;
    for (const auto& p : level(a).points) {
      if (p.gamma > lo && p.gamma <= hi) out.push_back(p);
    }
    return out;
  }

 private:
  RunConfig cfg_;
  double t_max_;
  std::vector<std::pair<cplx, ScanResult>> cache_;
};

SumParams params_for(const RunConfig& c, cplx a, double X, double T, double tau) {
  if (uses_delta(c.id)) return SumParams::make(a, X, c.alpha, tau, T);
  SumParams p{a, X, 0.0, tau, T, 0.0};
  return p;
}

struct Evaluation {
  double T_effective;
  double delta;
  cplx lhs;
  TermBreakdown rhs;
  std::optional<cplx> direct;  // fujii-estimate
};

// LHS and RHS of one formula at one height (or one x for the sum identities).
Evaluation evaluate(const RunConfig& c, PointCache* cache, double X, double T, bool need_lhs) {
  const std::string& id = c.id;
  if (uses_x_ladder(id)) {
    const double x = T;
    if (id == "fujii-estimate") {
      auto [direct, main] = fujii_estimate_pair(x, c.delta);
      return {x, c.delta, direct, main, direct};
    }
    const cplx direct = l_sum_direct(x, c.delta);
    return {x, c.delta, direct, id == "residue-L" ? l_sum_residue(x, c.delta) : l_sum_residue_corrected(x, c.delta),
            std::nullopt};
  }
  if (id == "fujii-zero") {
    Evaluation e{T, 0.0, {}, fujii_zero_sum_rhs(T), std::nullopt};
    if (need_lhs) {
      const double te = cache->effective_height(0.0, T);
      const double tau = c.tau.value_or(0.0);
      e.T_effective = te;
      e.lhs = lhs_sum(cache->between(0.0, tau, te), SumParams{0.0, 1.0, 0.0, tau, te, 0.0});
    }
    return e;
  }
  if (id == "fujii-weighted") {
    Evaluation e{T, 0.0, {}, fujii_weighted_rhs(X, T), std::nullopt};
    if (need_lhs) {
      const double te = cache->effective_height(0.0, T);
      const double tau = c.tau.value_or(0.0);
      e.T_effective = te;
      e.lhs = lhs_sum(cache->between(0.0, tau, te), SumParams{0.0, X, 0.0, tau, te, 0.0});
    }
    return e;
  }
  if (id == "corollary-jm") {
    Evaluation e{T, 0.0, {}, corollary_jm_rhs(c.a, X, T), std::nullopt};
    if (need_lhs) {
      const double te = cache->effective_height(c.a, T);
      const double tau = c.tau.value_or(1.0);
      e.T_effective = te;
      e.lhs = lhs_sum(cache->between(c.a, tau, te), SumParams{c.a, X, 0.0, tau, te, 0.0});
    }
    return e;
  }

  const double tau = c.tau.value_or(default_tau(id));
  if (id == "theorem1" || id == "corollary2" || id == "corollary2-corrected") {
    const SumParams p = params_for(c, 0.0, X, T, tau);
    TermBreakdown rhs = id == "theorem1" ? theorem1_rhs(p) : id == "corollary2" ? corollary2_rhs(p)
                                                                                 : corollary2_corrected_rhs(p);
    if (!need_lhs) return {T, p.delta, {}, rhs, std::nullopt};
    const double te_zero = cache->effective_height(0.0, T);
    SumParams pe = p;
    pe.T = te_zero;
    return {te_zero, p.delta, lhs_sum(cache->between(0.0, tau, te_zero), pe), rhs, std::nullopt};
  }
  // The remaining formulas need located points even for the RHS.
  const double te_zero = cache->effective_height(0.0, T);
  const double te_a = cache->effective_height(c.a, T);
  if (id == "theorem3") {
    const SumParams p = params_for(c, c.a, X, T, tau);
    SumParams pz = p;
    pz.a = 0.0;
    pz.T = te_zero;
    const cplx zero_sum = lhs_sum(cache->between(0.0, tau, te_zero), pz);
    SumParams pa = p;
    pa.T = te_a;
    return {te_a, p.delta, lhs_sum(cache->between(c.a, tau, te_a), pa), theorem3_rhs(p, zero_sum), std::nullopt};
  }
  if (id == "legacy-jm") {
    const cplx zero_sum = lhs_sum(cache->between(0.0, tau, te_zero), SumParams{0.0, 1.0, 0.0, tau, te_zero, 0.0});
    const cplx lhs = lhs_sum(cache->between(c.a, tau, te_a), SumParams{c.a, 1.0, 0.0, tau, te_a, 0.0});
    return {te_a, 0.0, lhs, legacy_jm_rhs(c.a, T, zero_sum), std::nullopt};
  }
  if (id == "nderiv") {
    const cplx zero_sum =
        lhs_sum(cache->between(0.0, tau, te_zero), SumParams{0.0, 1.0, 0.0, tau, te_zero, 0.0}, c.n);
    const cplx lhs = lhs_sum(cache->between(c.a, tau, te_a), SumParams{c.a, 1.0, 0.0, tau, te_a, 0.0}, c.n);
    return {te_a, 0.0, lhs, theorem_nderiv_rhs(c.a, c.n, T, zero_sum), std::nullopt};
  }
  throw Error(ErrorKind::domain, "unknown formula id " + id);
}

bool needs_points(const std::string& id) {
  return id == "theorem3" || id == "legacy-jm" || id == "nderiv";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TrendVerdict {
  bool pass;
  std::string reason;
};

// rows are grouped by ladder step: rel[step][x_index], norm likewise.
TrendVerdict trend(const std::string& id, const std::vector<std::vector<double>>& rel,
                   const std::vector<std::vector<double>>& norm) {
  bool collapsed = true;
  for (const auto& step : rel) {
    for (double r : step) collapsed = collapsed && r < 1e-12;
  }
  if (collapsed) return {true, "exact collapse (all rel_dev < 1e-12)"};

  std::vector<double> med;
  for (const auto& step : rel) med.push_back(median(step));
  const std::size_t steps = med.size() - 1;
  std::ostringstream why;

  double bound = 0.25;
  if (id == "corollary-jm" || id == "legacy-jm" || id == "nderiv") bound = 0.3;
  if (uses_x_ladder(id)) bound = 0.1;
  bool pass = med.back() < bound;
  why << "final median rel_dev " << med.back() << (pass ? " < " : " >= ") << bound;

  if (steps > 0 && id != "nderiv") {
    std::size_t decreasing = 0, non_increasing = 0;
    for (std::size_t i = 0; i < steps; ++i) {
      decreasing += med[i + 1] < med[i];
      non_increasing += med[i + 1] <= med[i];
    }
    if (id == "corollary-jm" || id == "legacy-jm") {
      pass = pass && decreasing == steps;
      why << "; median decreasing in " << decreasing << "/" << steps << " steps (need all)";
    } else if (uses_x_ladder(id)) {
      pass = pass && non_increasing == steps;
      why << "; median non-increasing in " << non_increasing << "/" << steps << " steps (need all)";
    } else {
      const std::size_t need = (2 * steps + 2) / 3;
      pass = pass && decreasing >= need;
      why << "; decreasing in " << decreasing << "/" << steps << " steps (need " << need << ")";
      double worst = 0.0;
      for (const auto& step : norm) {
        for (double v : step) worst = std::max(worst, v);
      }
      pass = pass && worst <= 10.0;
      why << "; max norm_dev " << worst << (worst <= 10.0 ? " <= 10" : " > 10");
    }
  }
  return {pass, why.str()};
}

Column col(std::string name, ColumnKind k) { return {std::move(name), k}; }

int cmd_apoints(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ScanResult r = scan_apoints(c.a, window_of(c, c.tau.value_or(0.0), c.T), true, scan_options(c));
  Table t;
  t.columns = {col("a", ColumnKind::complex), col("beta", ColumnKind::real), col("gamma", ColumnKind::real),
               col("residual", ColumnKind::real), col("T_effective", ColumnKind::real)};
  for (const auto& p : r.points) t.add_row({p.a, p.beta, p.gamma, p.residual, r.effective.t_high});
  emit(c, t, out);
  const double expected = expected_count(c.a, c.T);
  err << "count " << r.count << " expected_count " << format_real(expected) << " deviation "
      << format_real(r.count - expected) << " T_effective " << format_real(r.effective.t_high) << '\n';
  return kExitOk;
}

int cmd_count(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ScanResult r = scan_apoints(c.a, window_of(c, c.tau.value_or(0.0), c.T), false, scan_options(c));
  const double expected = expected_count(c.a, c.T);
  Table t;
  t.columns = {col("a", ColumnKind::complex),     col("t_low", ColumnKind::real),
               col("T", ColumnKind::real),        col("T_effective", ColumnKind::real),
               col("count", ColumnKind::integer), col("expected_count", ColumnKind::real),
               col("deviation", ColumnKind::real), col("defect", ColumnKind::real)};
  t.add_row({c.a, r.effective.t_low, c.T, r.effective.t_high, static_cast<long long>(r.count), expected,
             r.count - expected, r.defect});
  emit(c, t, out);
  err << "count " << r.count << '\n';
  return kExitOk;
}

int cmd_trivial(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto pts = trivial_apoints(c.a, c.kmin, c.kmax);
  Table t;
  t.columns = {col("k", ColumnKind::integer),       col("found", ColumnKind::integer),
               col("beta", ColumnKind::real),       col("gamma", ColumnKind::real),
               col("residual", ColumnKind::real),   col("distance", ColumnKind::real),
               col("message", ColumnKind::text)};
  for (const auto& p : pts) {
    t.add_row({static_cast<long long>(p.k), static_cast<long long>(p.found), p.point.beta, p.point.gamma,
               p.point.residual, p.distance, p.message});
    if (!p.found) err << "k = " << p.k << ": not-found: " << p.message << '\n';
  }
  emit(c, t, out);
  return kExitOk;
}

int cmd_sum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const double tau = c.tau.value_or(c.alpha != 0.0 ? 2.0 : 1.0);
  const double X = c.xs.front();
  SumParams p = c.alpha != 0.0 ? SumParams::make(c.a, X, c.alpha, tau, c.T) : SumParams{c.a, X, 0.0, tau, c.T, 0.0};
  const ScanResult r = scan_apoints(c.a, window_of(c, tau, c.T), true, scan_options(c));
  p.T = r.effective.t_high;
  std::vector<APoint> pts;
  for (const auto& q : r.points) {
    if (q.gamma > tau) pts.push_back(q);
  }
  const cplx total = lhs_sum(pts, p, c.n);
  Table t;
  t.columns = {col("T", ColumnKind::real),      col("T_effective", ColumnKind::real),
               col("delta", ColumnKind::real),  col("points", ColumnKind::integer),
               col("total", ColumnKind::complex)};
  t.add_row({c.T, p.T, p.delta, static_cast<long long>(pts.size()), total});
  emit(c, t, out);
  err << "sum over " << pts.size() << " points\n";
  return kExitOk;
}

int cmd_formula(const RunConfig& c, std::ostream& out, std::ostream&) {
  const double at = uses_x_ladder(c.id) ? c.x : c.T;
  std::optional<PointCache> cache;
  if (needs_points(c.id)) cache.emplace(c, at);
  const Evaluation e = evaluate(c, cache ? &*cache : nullptr, c.xs.front(), at, false);
  Table t;
  std::vector<Cell> row;
  t.columns.push_back(col(uses_x_ladder(c.id) ? "x" : "T", ColumnKind::real));
  row.emplace_back(at);
  t.columns.push_back(col("delta", ColumnKind::real));
  row.emplace_back(e.delta);
  for (std::size_t i = 0; i < e.rhs.labels.size(); ++i) {
    t.columns.push_back(col(e.rhs.labels[i], ColumnKind::complex));
    row.emplace_back(e.rhs.values[i]);
  }
  t.columns.push_back(col("total", ColumnKind::complex));
  row.emplace_back(e.rhs.total);
  if (e.direct) {
    t.columns.push_back(col("direct", ColumnKind::complex));
    row.emplace_back(*e.direct);
  }
  t.columns.push_back(col("error_scale", ColumnKind::real));
  row.emplace_back(e.rhs.error_scale);
  t.columns.push_back(col("alt_error_scale", ColumnKind::real));
  row.emplace_back(e.rhs.alt_error_scale);
  t.add_row(std::move(row));
  emit(c, t, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.ladder.empty()) throw Error(ErrorKind::domain, "verify needs --ladder");
  for (std::size_t i = 1; i < c.ladder.size(); ++i) {
    if (!(c.ladder[i] > c.ladder[i - 1])) throw Error(ErrorKind::domain, "--ladder must be strictly increasing");
  }
  std::optional<PointCache> cache;
  if (!uses_x_ladder(c.id)) cache.emplace(c, c.ladder.back());

  Table t;
  t.columns = {col("X", ColumnKind::real),        col("T", ColumnKind::real),
               col("T_effective", ColumnKind::real), col("delta", ColumnKind::real),
               col("lhs", ColumnKind::complex),   col("rhs", ColumnKind::complex),
               col("abs_dev", ColumnKind::real),  col("norm_dev", ColumnKind::real),
               col("rel_dev", ColumnKind::real)};
  std::vector<std::vector<double>> rel(c.ladder.size()), norm(c.ladder.size());
  for (std::size_t i = 0; i < c.ladder.size(); ++i) {
    for (double X : c.xs) {
      const Evaluation e = evaluate(c, cache ? &*cache : nullptr, X, c.ladder[i], true);
      const VerificationRow row = make_row(c.ladder[i], e.T_effective, e.lhs, e.rhs);
      t.add_row({X, row.T, row.T_effective, e.delta, row.lhs, row.rhs, row.abs_dev, row.norm_dev, row.rel_dev});
      rel[i].push_back(row.rel_dev);
      norm[i].push_back(row.norm_dev);
    }
  }
  emit(c, t, out);
  const TrendVerdict v = trend(c.id, rel, norm);
  err << "criterion " << (v.pass ? "PASS" : "FAIL") << ": " << v.reason << '\n';
  return v.pass ? kExitOk : kExitCriterion;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--a", c.a_text, "level a as re or re,im");
  sub->add_option("--X", c.x_text, "X (verify accepts a comma list)");
  sub->add_option("--alpha", c.alpha, "alpha; delta = 2 pi alpha / log(T / (2 pi X))");
  sub->add_option("--tau", c.tau, "lower ordinate bound tau");
  sub->add_option("--T", c.T, "upper ordinate bound T");
  sub->add_option("--ladder", c.ladder_text, "comma list of T (or x) values");
  sub->add_option("--id", c.id, "formula id")->check(CLI::IsMember(kFormulaIds));
  sub->add_option("--kmin", c.kmin, "first k for trivial a-points");
  sub->add_option("--kmax", c.kmax, "last k for trivial a-points");
  sub->add_option("--out", c.out_path, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "recorded in the output metadata");
  sub->add_option("--threads", c.threads, "OpenMP threads (default: runtime default)")->check(CLI::PositiveNumber);
  sub->add_option("--n", c.n, "derivative order for sum / nderiv");
  sub->add_option("--delta", c.delta, "delta for residue-L and fujii-estimate");
  sub->add_option("--x", c.x, "x for residue-L and fujii-estimate");
  sub->add_option("--sigma-low", c.sigma_low, "left edge of the scan window");
  sub->add_option("--sigma-high", c.sigma_high, "right edge of the scan window");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"a-points of the Riemann zeta function and explicit-formula checks"};
  app.require_subcommand(1);
  RunConfig c;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"apoints", "locate a-points in (tau, T]"},
      {"trivial", "locate the a-point near s = -2k for k in [kmin, kmax]"},
      {"count", "count a-points in (tau, T] by the argument principle"},
      {"sum", "sum zeta^(n)(rho_a + i delta) X^rho_a over located a-points"},
      {"formula", "evaluate one explicit formula term by term"},
      {"verify", "compare a direct sum with its formula along a ladder"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.a = parse_level(c.a_text);
    c.xs = parse_list(c.x_text, "--X");
    if (!c.ladder_text.empty()) c.ladder = parse_list(c.ladder_text, "--ladder");
    if ((c.command == "formula" || c.command == "verify") && c.id.empty()) {
      err << "--id is required for " << c.command << '\n';
      return kExitUsage;
    }
    if (c.command != "formula" && c.command != "verify" && !c.id.empty()) {
      err << "--id only applies to formula and verify\n";
      return kExitUsage;
    }
    if (c.command != "verify" && c.xs.size() != 1) throw Error(ErrorKind::domain, "--X takes one value here");
    if (c.threads > 0) omp_set_num_threads(c.threads);

    if (c.command == "apoints") return cmd_apoints(c, out, err);
    if (c.command == "count") return cmd_count(c, out, err);
    if (c.command == "trivial") return cmd_trivial(c, out, err);
    if (c.command == "sum") return cmd_sum(c, out, err);
    if (c.command == "formula") return cmd_formula(c, out, err);
    return cmd_verify(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace apoint::cli
