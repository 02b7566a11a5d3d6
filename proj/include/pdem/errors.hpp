#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdem {

enum class ErrorCode {
  NonPositiveAlpha,
  InvalidLambda,
  OutOfDomain,
  NotABoundState,
  DegreeMismatch,
  InvalidCount,
  ConstraintViolated,
  ConvergenceFailure,
  LengthMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotABoundState: return "NotABoundState";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

}  // namespace pdem
