#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace actsel {

enum class ErrorKind {
  InvalidInput,
  InvalidShape,
  IndexOutOfRange,
  DecompositionFailed,
  Uncontrollable,
  Infeasible,
  ModeTooLarge,
  InfeasibleCover,
  StateSpaceTooLarge,
  InstanceTooLarge,
  FaultEnumerationTooLarge,
  StrategyUnavailable,
  NotCertified,
  VerificationFailed,
  ParseError,
  SpecError,
  ConditioningFailed,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` tells
/// callers (and the CLI exit-code table) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace actsel
