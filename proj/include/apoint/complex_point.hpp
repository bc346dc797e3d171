#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "apoint/errors.hpp"

namespace apoint {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point s = re + i*im of the complex plane. Both parts are finite; the
/// constructor throws a domain error otherwise.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  ComplexPoint(double re, double im = 0.0) : z_(re, im) { check(); }
  ComplexPoint(cplx z) : z_(z) { check(); }

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  cplx value() const noexcept { return z_; }
  operator cplx() const noexcept { return z_; }

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

 private:
  void check() const {
    if (!std::isfinite(z_.real()) || !std::isfinite(z_.imag())) {
      throw Error(ErrorKind::domain, "non-finite complex point");
    }
  }

  cplx z_{0.0, 0.0};
};

std::string format_complex(cplx z);

}  // namespace apoint
