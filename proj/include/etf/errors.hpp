#pragma once

#include <stdexcept>
#include <string>

namespace etf {

// Base class for all library-specific failures.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed .crsm / .dg input (bad token, ragged rows, broken self-adjointness, ...).
class format_error : public error {
 public:
  using error::error;
};

// derive_params failure modes.
enum class param_error_kind {
  not_perfect_square,
  non_integral_k,
  non_integral_lambda,
};

class param_error : public error {
 public:
  param_error(param_error_kind kind, const std::string& msg) : error(msg), kind_(kind) {}
  param_error_kind kind() const { return kind_; }

 private:
  param_error_kind kind_;
};

// A documented precondition was violated (tensor factor with mu != -2,
// pair stats at an omega^2 entry, search on infeasible parameters, ...).
class precondition_error : public error {
 public:
  using error::error;
};

// A configured size cap was exceeded (power_9 order, canonicalization bound).
class size_limit_error : public error {
 public:
  using error::error;
};

// Numerical frame synthesis failed (projector rank mismatch, parameter mismatch).
class frame_error : public error {
 public:
  using error::error;
};

}  // namespace etf
