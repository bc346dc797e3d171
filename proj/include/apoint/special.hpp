#pragma once

#include <array>
#include <utility>

#include "apoint/complex_point.hpp"

namespace apoint {

/// Even-index Bernoulli numbers: bernoulli_2k[k] = B_{2k}, k = 0..12.
inline constexpr std::array<double, 13> bernoulli_2k = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

double factorial(int n);
double binomial(int n, int k);

/// log Gamma(z) by upward recurrence to Re z >= 10 followed by the Stirling
/// series. The imaginary part is correct modulo 2*pi only.
cplx ln_gamma(cplx z);

/// psi^{(m)}(z), the m-th derivative of the digamma function.
cplx polygamma(int m, cplx z);
inline cplx digamma(cplx z) { return polygamma(0, z); }

/// {sin z, cos z} multiplied by exp(-|Im z|), finite for any |Im z|.
std::pair<cplx, cplx> scaled_sincos(cplx z);

}  // namespace apoint
