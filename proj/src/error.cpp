#include "actsel/error.hpp"

namespace actsel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::Uncontrollable: return "Uncontrollable";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::ModeTooLarge: return "ModeTooLarge";
    case ErrorKind::InfeasibleCover: return "InfeasibleCover";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::FaultEnumerationTooLarge: return "FaultEnumerationTooLarge";
    case ErrorKind::StrategyUnavailable: return "StrategyUnavailable";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SpecError: return "SpecError";
    case ErrorKind::ConditioningFailed: return "ConditioningFailed";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace actsel
