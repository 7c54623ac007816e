#pragma once

#include <stdexcept>
#include <string>

namespace cfl {

// Library-wide error codes. Every throwing operation documents which of
// these it can raise; tests match on the code, not the message text.
enum class Errc {
  BadExponent,          // exponent vector has wrong length, negative entry, or wrong sum
  NonFiniteCoefficient, // NaN or infinity supplied in float mode
  DimensionMismatch,    // point/vector dimension does not match the form's variable count
  WrongArity,           // polarization called with a number of points != degree
  OddDegree,            // biform/hermitian operations need even degree
  DegreeMismatch,       // operands must share the same degree
  DegreeExceeds,        // differential operator degree exceeds the target's degree
  NotBivariate,         // operation defined for two-variable forms only
  NotSymmetric,         // matrix expected to be symmetric is not
  ShapeMismatch,        // inconsistent matrix/vector dimensions in a problem description
  NegativeEvaluation,   // evaluation expected to be nonnegative came out negative
  NegativeInput,        // input value outside the allowed nonnegative range
  DOdd,                 // construction requires an even degree parameter
  ConvexityRefutation,  // a form constructed to be convex failed its convexity certificate
  GenerationFailed,     // randomized search did not reach the requested residual
  SolverFailure,        // interior-point solve ended without a usable status
  BadInput,             // malformed file or argument
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BadExponent: return "BadExponent";
    case Errc::NonFiniteCoefficient: return "NonFiniteCoefficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongArity: return "WrongArity";
    case Errc::OddDegree: return "OddDegree";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DegreeExceeds: return "DegreeExceeds";
    case Errc::NotBivariate: return "NotBivariate";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NegativeEvaluation: return "NegativeEvaluation";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::DOdd: return "DOdd";
    case Errc::ConvexityRefutation: return "ConvexityRefutation";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::SolverFailure: return "SolverFailure";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace cfl
