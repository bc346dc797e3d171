#pragma once

#include <stdexcept>
#include <string>

namespace apoint {

enum class ErrorKind {
  domain,
  pole_at_one,
  cutoff_overflow,
  near_zero_division,
  overflow,
  out_of_range,
  level_one,
  boundary_proximity,
  quadrature_nonconvergence,
  newton_divergence,
  multiple_root,
  not_found,
  window_mismatch,
  delta_zero,
  non_integer_x,
};

const char* to_string(ErrorKind kind);

// Every failure in the library is reported through this type; kind() lets
// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace apoint
