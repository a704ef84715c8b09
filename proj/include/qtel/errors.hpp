#ifndef QTEL_ERRORS_HPP
#define QTEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtel {

enum class ErrorKind {
  DivisionByZero,
  EvalPole,
  NotSimilar,
  NotReconstructible,
  NotSymmetrizable,
  NotFactorable,
  InvalidSubstitution,
  UnsupportedNegativeK,
  DispersionUndetermined,
  NotSummable,
  MultiplierNotFinite,
  ConvergenceViolation,
  DuplicateName,
  ZeroH,
  SyntaxError,
  UnknownSymbol,
  NotFound,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::EvalPole: return "EvalPole";
    case ErrorKind::NotSimilar: return "NotSimilar";
    case ErrorKind::NotReconstructible: return "NotReconstructible";
    case ErrorKind::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorKind::NotFactorable: return "NotFactorable";
    case ErrorKind::InvalidSubstitution: return "InvalidSubstitution";
    case ErrorKind::UnsupportedNegativeK: return "UnsupportedNegativeK";
    case ErrorKind::DispersionUndetermined: return "DispersionUndetermined";
    case ErrorKind::NotSummable: return "NotSummable";
    case ErrorKind::MultiplierNotFinite: return "MultiplierNotFinite";
    case ErrorKind::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::ZeroH: return "ZeroH";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qtel

#endif
