#pragma once

#include <stdexcept>
#include <string>

namespace centerseries {

enum class ErrorCode {
  window_too_small,
  zero_term_in_window,
  pattern_unsupported,
  non_monotonic_window,
  not_power_law,
  empty_set,
  non_conjugate_closed,
  precondition_violated,
  theta_zero,
  special_point,
  shape_not_catalogued,
  unknown_name,
  parse_error,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::window_too_small: return "window-too-small";
    case ErrorCode::zero_term_in_window: return "zero-term-in-window";
    case ErrorCode::pattern_unsupported: return "pattern-unsupported";
    case ErrorCode::non_monotonic_window: return "non-monotonic-window";
    case ErrorCode::not_power_law: return "not-power-law";
    case ErrorCode::empty_set: return "empty-set";
    case ErrorCode::non_conjugate_closed: return "non-conjugate-closed";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::theta_zero: return "theta-zero";
    case ErrorCode::special_point: return "special-point";
    case ErrorCode::shape_not_catalogued: return "shape-not-catalogued";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace centerseries
