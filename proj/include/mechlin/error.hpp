#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mechlin {

/// Stable error identifiers. Each maps to exactly one wire code (see code_name).
enum class ErrorCode {
  DivisionByZero,
  VariableMismatch,
  ShapeMismatch,
  NotSquare,
  SyntaxError,
  NonlinearError,
  EmptyEquation,
  ZeroPivot,
  Singular,
  SingularBlock,
  RankDeficient,
  NotSymmetric,
  NotPositiveDefinite,
  NotSkewSymmetric,
  NonInvertible,
  NonConvergence,
  NotMonic,
  ZeroPolynomial,
  OutOfRange,
  ConstructionError,
  NotFound,
  NoValidOption,
  InvalidArgument,
  BadRequest,
};

constexpr std::string_view code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NonlinearError: return "NonlinearError";
    case ErrorCode::EmptyEquation: return "EmptyEquation";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ConstructionError: return "ConstructionError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NoValidOption: return "NoValidOption";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

inline constexpr ErrorCode all_error_codes[] = {
    ErrorCode::DivisionByZero,     ErrorCode::VariableMismatch,  ErrorCode::ShapeMismatch,
    ErrorCode::NotSquare,          ErrorCode::SyntaxError,       ErrorCode::NonlinearError,
    ErrorCode::EmptyEquation,      ErrorCode::ZeroPivot,         ErrorCode::Singular,
    ErrorCode::SingularBlock,      ErrorCode::RankDeficient,     ErrorCode::NotSymmetric,
    ErrorCode::NotPositiveDefinite, ErrorCode::NotSkewSymmetric, ErrorCode::NonInvertible,
    ErrorCode::NonConvergence,     ErrorCode::NotMonic,          ErrorCode::ZeroPolynomial,
    ErrorCode::OutOfRange,         ErrorCode::ConstructionError, ErrorCode::NotFound,
    ErrorCode::NoValidOption,      ErrorCode::InvalidArgument,   ErrorCode::BadRequest,
};

/// The single exception type thrown by the library. `detail` holds
/// machine-readable context (shapes, pivot index, line/column, ...).
class Error : public std::runtime_error {
 public:
  using Detail = std::map<std::string, std::string>;

  Error(ErrorCode code, const std::string& message, Detail detail = {})
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code),
        message_(message),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const Detail& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string message_;
  Detail detail_;
};

}  // namespace mechlin
