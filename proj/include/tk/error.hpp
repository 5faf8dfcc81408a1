#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace tk {

// Numerical bands shared by every module.
namespace tol {
inline constexpr double circle = 1e-9;   // | |r| - 1 | below this means "on the circle"
inline constexpr double root = 1e-7;     // relative root matching / clustering radius
inline constexpr double cluster = 1e-3;  // widest radius considered for multiple-root merging
inline constexpr double warn_band = 1e-6;  // roots this close to the band edge raise a warning
inline constexpr double zero_snap = 1e-12;  // roots smaller than this are treated as exact zeros
}  // namespace tol

enum class ErrorCode {
  ZeroPolynomial,
  ZeroFunction,
  NotInvertibleOnCircle,
  NotInHardySpace,
  NotOuter,
  NotInKernel,
  TrivialKernel,
  UndefinedQuotient,
  PreconditionViolation,
  CarlesonFailure,
  PoleOnCircle,
  DimensionMismatch,
  NotSquareIntegrable,
  UnboundedSymbol,
  SyntaxError,
  BlaschkeParameterOutOfDisc,
  DivisionByZero,
  VerificationMismatch,
  UsageError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NotInvertibleOnCircle: return "NotInvertibleOnCircle";
    case ErrorCode::NotInHardySpace: return "NotInHardySpace";
    case ErrorCode::NotOuter: return "NotOuter";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::TrivialKernel: return "TrivialKernel";
    case ErrorCode::UndefinedQuotient: return "UndefinedQuotient";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::CarlesonFailure: return "CarlesonFailure";
    case ErrorCode::PoleOnCircle: return "PoleOnCircle";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquareIntegrable: return "NotSquareIntegrable";
    case ErrorCode::UnboundedSymbol: return "UnboundedSymbol";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::BlaschkeParameterOutOfDisc: return "BlaschkeParameterOutOfDisc";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::VerificationMismatch: return "VerificationMismatch";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception. The code
/// is stable and is what the CLI prints in its error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> position_;
};

}  // namespace tk
