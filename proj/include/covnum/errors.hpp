#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covnum {

enum class ErrorKind {
  InvalidDimension,
  Overflow,
  DomainError,
  ModelMismatch,
  NotSummable,
  Unsupported,
  ZeroCoefficient,
  QuadratureFailure,
  LevelOverflow,
  HypothesisNotCertified,
  DegenerateKernel,
  ValidationError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::NotSummable: return "NotSummable";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::LevelOverflow: return "LevelOverflow";
    case ErrorKind::HypothesisNotCertified: return "HypothesisNotCertified";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the named kinds above;
/// the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace covnum
