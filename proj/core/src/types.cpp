#include "circumcone/types.hpp"

namespace circumcone {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConstruction: return "ConstructionError";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDependentBase: return "DependentBase";
    case ErrorKind::kAffinelyDependent: return "AffinelyDependent";
    case ErrorKind::kDegenerateDirection: return "DegenerateDirection";
    case ErrorKind::kZeroDirection: return "ZeroDirection";
    case ErrorKind::kHypothesisFails: return "HypothesisFails";
    case ErrorKind::kUnsupportedExact: return "UnsupportedExact";
    case ErrorKind::kInfeasiblePoint: return "InfeasiblePoint";
    case ErrorKind::kEmptyActiveSet: return "EmptyActiveSet";
    case ErrorKind::kDegenerateBox: return "DegenerateBox";
    case ErrorKind::kApex: return "ApexError";
    case ErrorKind::kStepTooLong: return "StepTooLong";
    case ErrorKind::kStepFailure: return "StepFailure";
    case ErrorKind::kDegenerateAffine: return "DegenerateAffine";
    case ErrorKind::kDualDomain: return "DualDomainError";
    case ErrorKind::kContractViolation: return "ContractViolation";
  }
  return "UnknownError";
}

}  // namespace circumcone
