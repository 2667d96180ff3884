#include "ctlab/errors.hpp"

namespace ctlab {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NonCoprimeToThree: return "NonCoprimeToThree";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ExhaustionFailure: return "ExhaustionFailure";
    case ErrorKind::AmbiguousDivisor: return "AmbiguousDivisor";
    case ErrorKind::PrecisionBudgetExceeded: return "PrecisionBudgetExceeded";
    case ErrorKind::RecognitionFailure: return "RecognitionFailure";
    case ErrorKind::NonRealResidual: return "NonRealResidual";
    case ErrorKind::NoValidCubeRoot: return "NoValidCubeRoot";
    case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorKind::RootNumberAmbiguous: return "RootNumberAmbiguous";
    case ErrorKind::AlgorithmStuck: return "AlgorithmStuck";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NoAdmissibleMatrix: return "NoAdmissibleMatrix";
  }
  return "Error";
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation:
    case ErrorKind::NotPrime:
    case ErrorKind::NonCoprimeToThree:
    case ErrorKind::NotCoprime:
    case ErrorKind::NotApplicable:
      return 2;
    case ErrorKind::RecognitionFailure:
      return 3;
    default:
      return 4;
  }
}

}  // namespace ctlab
