#include "apoint/errors.hpp"

namespace apoint {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole_at_one: return "pole-at-one";
    case ErrorKind::cutoff_overflow: return "cutoff-overflow";
    case ErrorKind::near_zero_division: return "near-zero-division";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::level_one: return "level-one";
    case ErrorKind::boundary_proximity: return "boundary-proximity";
    case ErrorKind::quadrature_nonconvergence: return "quadrature-nonconvergence";
    case ErrorKind::newton_divergence: return "newton-divergence";
    case ErrorKind::multiple_root: return "multiple-root";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::window_mismatch: return "window-mismatch";
    case ErrorKind::delta_zero: return "delta-zero";
    case ErrorKind::non_integer_x: return "non-integer-x";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace apoint
