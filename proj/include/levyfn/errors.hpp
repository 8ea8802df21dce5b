#pragma once
// Error taxonomy shared by the library and the CLI.  Every failure that can
// reach a caller carries a stable machine-readable code; the CLI forwards the
// code verbatim in its JSON error envelope.

#include <stdexcept>
#include <string>

namespace levyfn {

enum class ErrorCode {
  ParameterViolation,   // inputs outside the admissible domain of an operation
  StripViolation,       // evaluation point outside the analyticity strip
  RadiusViolation,      // series evaluated beyond its radius of convergence
  QuadratureFailure,    // adaptive integration did not reach its tolerance
  NotPhilanthropic,     // factor measure lacks a non-increasing density
  NoRoot,               // root finding had no admissible bracket
  NoSolution,           // no admissible shift below the cap
  BadBeta,              // transform shift outside (0, theta_max)
  SignViolation,        // moment formula hit a factor of the wrong sign
  MomentDivergence,     // required moment is infinite
  UnkilledNonDrifting,  // q = 0 and mean >= 0: functional diverges
  InconsistentFactors,  // factor pair does not reproduce the model exponent
  Inadmissible,         // stable parameter pair outside the admissible set
  Schema,               // model file failed structural validation
  Io,                   // file could not be read or written
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParameterViolation: return "ParameterViolation";
    case ErrorCode::StripViolation: return "StripViolation";
    case ErrorCode::RadiusViolation: return "RadiusViolation";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotPhilanthropic: return "NotPhilanthropic";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::BadBeta: return "BadBeta";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::MomentDivergence: return "MomentDivergence";
    case ErrorCode::UnkilledNonDrifting: return "UnkilledNonDrifting";
    case ErrorCode::InconsistentFactors: return "InconsistentFactors";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Io: return "IO";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace levyfn
