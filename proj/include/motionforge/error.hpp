#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motionforge {

// Stable machine-readable failure codes. The CLI and the HTTP service report
// these verbatim (see to_string).
enum class ErrorCode {
  // input / schema problems
  SchemaError,
  BadArity,
  BadOption,
  BadScheme,
  IoError,
  UsageError,
  // mathematical failures
  SingularQuaternion,
  NotOnStudyQuadric,
  DuplicateNodes,
  DegenerateInput,
  NoRealSolution,
  NoRulings,
  DegenerateSpan,
  BadLambda,
  SingularSystem,
  SingularDifference,
  SingularWeight,
  SingularElimination,
  UnsupportedDegree,
  IrreducibleLeading,
  NonGenericMotion,
  RealNormRoots,
  InsufficientFactorizations,
  NoAxis,
  IdenticalFactorizations,
  SingularParameter,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::BadArity: return "BAD_ARITY";
    case ErrorCode::BadOption: return "BAD_OPTION";
    case ErrorCode::BadScheme: return "BAD_SCHEME";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::UsageError: return "USAGE_ERROR";
    case ErrorCode::SingularQuaternion: return "SINGULAR_QUATERNION";
    case ErrorCode::NotOnStudyQuadric: return "NOT_ON_STUDY_QUADRIC";
    case ErrorCode::DuplicateNodes: return "DUPLICATE_NODES";
    case ErrorCode::DegenerateInput: return "DEGENERATE_INPUT";
    case ErrorCode::NoRealSolution: return "NO_REAL_SOLUTION";
    case ErrorCode::NoRulings: return "NO_RULINGS";
    case ErrorCode::DegenerateSpan: return "DEGENERATE_SPAN";
    case ErrorCode::BadLambda: return "BAD_LAMBDA";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::SingularDifference: return "SINGULAR_DIFFERENCE";
    case ErrorCode::SingularWeight: return "SINGULAR_WEIGHT";
    case ErrorCode::SingularElimination: return "SINGULAR_ELIMINATION";
    case ErrorCode::UnsupportedDegree: return "UNSUPPORTED_DEGREE";
    case ErrorCode::IrreducibleLeading: return "IRREDUCIBLE_LEADING";
    case ErrorCode::NonGenericMotion: return "NON_GENERIC_MOTION";
    case ErrorCode::RealNormRoots: return "REAL_NORM_ROOTS";
    case ErrorCode::InsufficientFactorizations: return "INSUFFICIENT_FACTORIZATIONS";
    case ErrorCode::NoAxis: return "NO_AXIS";
    case ErrorCode::IdenticalFactorizations: return "IDENTICAL_FACTORIZATIONS";
    case ErrorCode::SingularParameter: return "SINGULAR_PARAMETER";
  }
  return "UNKNOWN";
}

// Input-side codes map to CLI exit 2 / HTTP 400, everything else to 3 / 422.
inline constexpr bool is_input_error(ErrorCode code) {
  return code <= ErrorCode::UsageError;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace motionforge
