#ifndef VANCYC_ERRORS_HPP
#define VANCYC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vancyc {

// Diagnosed-input conditions exit with code 2, internal/precision
// conditions with code 3, I/O and syntax problems with code 1.
enum class ErrorCode {
  SyntaxError,        // malformed expression or document (exit 1)
  UnknownVariable,    // exit 1
  NotIsolated,        // Jacobian ideal not zero-dimensional (exit 2)
  IrreducibleFactor,  // spectrum does not split under the field policy (exit 2)
  NonrationalExponent,// residue eigenvalue outside Q (exit 2)
  SingularSylvester,  // spectra of the Sylvester pair intersect (exit 2)
  EmptyJ,             // nc-monomial input with empty J (exit 1)
  WindowUnbounded,    // nc-monomial input without window or bound (exit 1)
  PrecisionExhausted, // too few u-orders left after decoupling (exit 3)
  NoStabilization,    // lattice saturation failed to stabilize (exit 3)
  Internal            // exit 3
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::IrreducibleFactor: return "IrreducibleFactor";
    case ErrorCode::NonrationalExponent: return "NonrationalExponent";
    case ErrorCode::SingularSylvester: return "SingularSylvester";
    case ErrorCode::EmptyJ: return "EmptyJ";
    case ErrorCode::WindowUnbounded: return "WindowUnbounded";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code), reason_(std::move(message)) {}

  ErrorCode code() const { return code_; }
  const std::string& reason() const { return reason_; }

  int exit_code() const {
    switch (code_) {
      case ErrorCode::SyntaxError:
      case ErrorCode::UnknownVariable:
      case ErrorCode::EmptyJ:
      case ErrorCode::WindowUnbounded:
        return 1;
      case ErrorCode::NotIsolated:
      case ErrorCode::IrreducibleFactor:
      case ErrorCode::NonrationalExponent:
      case ErrorCode::SingularSylvester:
        return 2;
      default:
        return 3;
    }
  }

 private:
  ErrorCode code_;
  std::string reason_;
};

}  // namespace vancyc

#endif  // VANCYC_ERRORS_HPP
