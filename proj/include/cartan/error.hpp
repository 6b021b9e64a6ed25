#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace cartan {

using cplx = std::complex<double>;

/// Machine-readable category attached to every thrown cartan::Error.
enum class ErrorCode {
  structural,          // index ranges in an algebra description are malformed
  dimension_mismatch,
  invalid_algebra,     // well-formed but violates the Cartan multiplication rules
  invalid_basis,
  span_condition,      // f_u restricted to the span is not onto C
  pole,                // resolvent evaluated at a spectrum point
  singular,            // noninvertible element
  out_of_domain,
  invalid_argument,
  parse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_algebra: return "invalid_algebra";
    case ErrorCode::invalid_basis: return "invalid_basis";
    case ErrorCode::span_condition: return "span_condition";
    case ErrorCode::pole: return "pole";
    case ErrorCode::singular: return "singular";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<int> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }

  /// Zero-based idempotent or basis index the error refers to, when there is one.
  std::optional<int> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<int> index_;
};

}  // namespace cartan
