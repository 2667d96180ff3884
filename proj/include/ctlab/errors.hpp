#pragma once

#include <stdexcept>
#include <string>

namespace ctlab {

enum class ErrorKind {
  Validation,
  NotPrime,
  NonCoprimeToThree,
  NotCoprime,
  NoSolution,
  ExhaustionFailure,
  AmbiguousDivisor,
  PrecisionBudgetExceeded,
  RecognitionFailure,
  NonRealResidual,
  NoValidCubeRoot,
  ConsistencyFailure,
  RootNumberAmbiguous,
  AlgorithmStuck,
  NotApplicable,
  NoAdmissibleMatrix,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// process exit status used by the command-line tool
int exit_code_for(ErrorKind k);

}  // namespace ctlab
