#pragma once

#include <span>
#include <vector>

#include "apoint/apoints.hpp"

namespace apoint {

/// Summands of a point sum: zeta^(n)(rho + i delta) X^rho for each point.
struct PointSumSpec {
  int n = 1;
  double delta = 0.0;
  double x_base = 1.0;  // X
  EvalOptions eval{};
};

// Reductions use fixed blocks summed in block order, so the serial and
// parallel variants agree bit for bit and do not depend on the thread count.
inline constexpr std::size_t kReductionBlock = 64;

namespace serial {

/// sum_{m <= x} f[m] sum_{r <= x/m} g[r] h[m r]; arrays are indexed 0..floor(x).
/// An empty h means h = 1.
cplx pair_sum(std::span<const cplx> f, std::span<const cplx> g, std::span<const cplx> h);

cplx point_sum(std::span<const APoint> points, const PointSumSpec& spec);

ScanResult scan_window(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts);

}  // namespace serial

namespace parallel {

cplx pair_sum(std::span<const cplx> f, std::span<const cplx> g, std::span<const cplx> h);

cplx point_sum(std::span<const APoint> points, const PointSumSpec& spec);

ScanResult scan_window(cplx a, const ScanWindow& w, bool locate, const ScanOptions& opts);

}  // namespace parallel

/// Threads for OpenMP regions: `requested` if positive, else the runtime default.
int resolve_threads(int requested);

}  // namespace apoint
