#include <doctest.h>

#include <random>

#include "apoint/apoints.hpp"
#include "apoint/contour.hpp"
#include "oracles.hpp"

using namespace apoint;

namespace {

// Winding number of zeta - a around |s - c| = r from a fine polygon.
double polygon_winding(cplx a, cplx c, double r, int m = 2000) {
  double arg = 0.0;
  cplx prev = zeta(c + r) - a;
  for (int j = 1; j <= m; ++j) {
    const cplx f = zeta(c + std::polar(r, kTwoPi * j / m)) - a;
    arg += std::arg(f / prev);
    prev = f;
  }
  return arg / kTwoPi;
}

// First zero on the critical line by bisection of e^{i theta} zeta(1/2 + it),
// with zeta from the eta series.
double first_zero_by_bisection() {
  auto z = [](double t) {
    const cplx v = std::exp(cplx(0.0, oracle::rs_theta(t))) * oracle::zeta_borwein(cplx(0.5, t));
    return v.real();
  };
  double lo = 14.0, hi = 14.3;
  REQUIRE((z(lo) < 0) != (z(hi) < 0));
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((z(mid) < 0) == (z(lo) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("zero count below 100 matches the critical-line oracle") {
  const ScanWindow w{0.0, 100.0, -1.0, 2.0};
  const int c = count_apoints(0.0, w);
  CHECK(c == 29);
  CHECK(c == oracle::critical_line_zero_count(10.0, 100.0));
  CHECK(count_apoints(0.0, ScanWindow{0.0, 10.0, -1.0, 2.0}) == 0);
  CHECK(count_apoints(0.7, ScanWindow{50.0, 50.0001}) == 0);
}

TEST_CASE("first zero") {
  const auto pts = locate_apoints(0.0, ScanWindow{0.0, 20.0, -1.0, 2.0});
  REQUIRE(pts.size() == 1);
  const double oracle_gamma = first_zero_by_bisection();
  CHECK(std::abs(pts[0].gamma - oracle_gamma) < 1e-9);
  CHECK(std::abs(pts[0].gamma - 14.134725141734693) < 1e-9);
  CHECK(std::abs(pts[0].beta - 0.5) < 1e-6);
}

TEST_CASE("located points are certified and conjugation stable") {
  const auto pts = locate_apoints(0.5, default_window(0.5, 0.0, 30.0));
  REQUIRE(!pts.empty());
  for (const auto& p : pts) {
    CHECK(p.residual < kResidualBound);
    CHECK(std::abs(zeta(p.rho()) - 0.5) < 1e-9);
    CHECK(p.gamma > 0.0);
    CHECK(p.gamma <= 30.0);
  }
  const auto mid = locate_apoints(0.5, default_window(0.5, 10.0, 40.0));
  for (const auto& p : mid) {
    const cplx c = std::conj(p.rho());
    CHECK(std::abs(zeta(c) - 0.5) < 1e-9);
    const auto q = newton_refine(0.5, c, {});
    REQUIRE(q.has_value());
    CHECK(std::abs(q->rho() - c) < 1e-10);
  }
  for (std::size_t i = 1; i < mid.size(); ++i) CHECK(mid[i - 1].gamma <= mid[i].gamma);
}

TEST_CASE("count equals number located on random windows") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lo(1.0, 150.0), len(1.0, 30.0);
  const cplx levels[] = {0.0, 0.5, cplx(0.0, 1.0)};
  for (int i = 0; i < 20; ++i) {
    const cplx a = levels[i % 3];
    const double t0 = lo(rng);
    const ScanWindow w = default_window(a, t0, t0 + len(rng));
    const ScanResult r = scan_apoints(a, w, true);
    CHECK(static_cast<int>(r.points.size()) == r.count);
    CHECK(r.count == count_apoints(a, w));
    CHECK(r.defect < 1e-6);
  }
}

TEST_CASE("window additivity") {
  for (cplx a : {cplx(0.0), cplx(0.5), cplx(0.0, 1.0)}) {
    const int whole = count_apoints(a, default_window(a, 1.0, 120.0));
    const int lower = count_apoints(a, default_window(a, 1.0, 63.3));
    const int upper = count_apoints(a, default_window(a, 63.3, 120.0));
    CHECK(whole == lower + upper);
  }
}

TEST_CASE("count law with the c_1 = 2 branch") {
  CHECK(expected_count(0.0, 100.0) == doctest::Approx(100.0 / kTwoPi * std::log(100.0 / (kTwoPi * std::exp(1.0)))));
  CHECK(expected_count(0.0, 100.0) == doctest::Approx(28.127).epsilon(1e-4));
  CHECK(expected_count(1.0, 100.0) == doctest::Approx(100.0 / kTwoPi * std::log(100.0 / (2 * kTwoPi * std::exp(1.0)))));
  CHECK(std::abs(expected_count(0.3, kTwoPi * std::exp(1.0))) < 1e-13);
  for (cplx a : {cplx(0.0), cplx(0.5), cplx(1.0), cplx(0.0, 1.0)}) {
    for (double T : {100.0, 200.0}) {
      const int c = count_apoints(a, default_window(a, 1.0, T));
      CHECK(std::abs(c - expected_count(a, T)) <= 3.0 * std::log(T));
    }
  }
}

TEST_CASE("no trivial points above t = 1") {
  for (cplx a : {cplx(0.0), cplx(0.5), cplx(0.0, 1.0)}) {
    const auto pts = locate_apoints(a, default_window(a, 1.0, 400.0));
    for (const auto& p : pts) CHECK(p.beta > 0.0);
  }
}

TEST_CASE("trivial zeros and trivial 0.3-points") {
  const auto z = trivial_apoints(0.0, 1, 6);
  for (const auto& p : z) {
    REQUIRE(p.found);
    CHECK(p.distance < 1e-9);
  }
  // The winding oracle puts exactly one 0.3-point in |s + 2k| < 1/2 from k = 8
  // on and none for k = 5..7, where |zeta| stays far below 0.3.
  for (int k = 5; k <= 12; ++k) {
    const double w = polygon_winding(0.3, cplx(-2.0 * k, 0.0), kTrivialDiskRadius);
    CHECK(std::abs(w - (k >= 8 ? 1.0 : 0.0)) < 1e-6);
  }
  const auto t = trivial_apoints(0.3, 5, 12);
  REQUIRE(t.size() == 8);
  double prev = INFINITY;
  for (const auto& p : t) {
    CHECK(p.found == (p.k >= 8));
    if (!p.found) {
      CHECK(!p.message.empty());
      continue;
    }
    CHECK(p.point.residual < kResidualBound);
    CHECK(p.distance < prev);
    prev = p.distance;
  }
  CHECK_THROWS_AS(trivial_apoints(0.3, 3, 2), Error);
}

TEST_CASE("edges refuse to pass through a root") {
  const double g = 14.134725141734693;
  try {
    integrate_edge(0.0, cplx(-1.0, g), cplx(2.0, g), ScanOptions{});
    FAIL("expected boundary proximity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::boundary_proximity);
  }
  const SettledCut cut = settle_cut(0.0, g, -1.0, 2.0, 0.01, ScanOptions{});
  CHECK(cut.nudges == 1);
  CHECK(cut.t == doctest::Approx(g + 0.01));
}

TEST_CASE("edge moments integrate a known rational function's shape") {
  // Around a box holding exactly the first zero, the power sums of the roots
  // are rho and rho^2.
  const Box box{-1.0, 2.0, 10.0, 20.0};
  const ScanOptions o;
  const auto bottom = integrate_edge(0.0, cplx(-1.0, 10.0), cplx(2.0, 10.0), o);
  const auto top = integrate_edge(0.0, cplx(-1.0, 20.0), cplx(2.0, 20.0), o);
  const auto r = scan_box(0.0, box, bottom, top, true, o);
  CHECK(r.count == 1);
  CHECK(std::abs(r.raw - 1.0) < 1e-8);
  REQUIRE(r.points.size() == 1);
  CHECK(std::abs(r.points[0].gamma - 14.134725141734693) < 1e-9);
  const auto rev = bottom.reversed();
  CHECK(rev.moments[0] == -bottom.moments[0]);
  CHECK(rev.from == bottom.to);
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(ScanWindow({5.0, 5.0}).validate(), Error);
  CHECK_THROWS_AS(ScanWindow({0.0, 5.0, 2.0, 1.0}).validate(), Error);
  CHECK_THROWS_AS(ScanWindow({0.0, 2e4}).validate(), Error);
  CHECK(default_sigma_high(0.5) == 6.0);
  CHECK(default_sigma_high(100.0) == doctest::Approx(4.0 + std::log2(101.0)));
}
