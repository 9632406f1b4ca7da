#pragma once

#include <stdexcept>
#include <string>

namespace divfan {

/// Error categories raised by the library. Verdict-style checks never throw
/// these; they are reserved for malformed input and budget violations.
enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  RankMismatch,
  RankBudgetExceeded,
  SizeBudgetExceeded,
  EmptyPolyhedron,
  FaceUnbounded,
  NonPointed,
  UnsupportedBase,
  NonIntegralPairing,
  OutsideDualCone,
  EmptyLocus,
  NotASection,
  TailViolation,
  ChainMismatch,
  OutsideLocus,
  BaseMismatch,
  FaceCertificateNotFound,
  NotAFan,
  NotAHomomorphism,
  MalformedInput,
  DegenerateSlices,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::RankBudgetExceeded: return "RankBudgetExceeded";
    case ErrorKind::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorKind::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorKind::FaceUnbounded: return "FaceUnbounded";
    case ErrorKind::NonPointed: return "NonPointed";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::NonIntegralPairing: return "NonIntegralPairing";
    case ErrorKind::OutsideDualCone: return "OutsideDualCone";
    case ErrorKind::EmptyLocus: return "EmptyLocus";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::TailViolation: return "TailViolation";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::OutsideLocus: return "OutsideLocus";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::FaceCertificateNotFound: return "FaceCertificateNotFound";
    case ErrorKind::NotAFan: return "NotAFan";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::DegenerateSlices: return "DegenerateSlices";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), message_(what) {}
  ErrorKind kind() const { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace divfan

namespace divfan {

/// Outcome of a check: either it holds, or the first failing clause with a witness.
struct Verdict {
  bool ok = true;
  std::string clause;
  std::string witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string clause, std::string witness) { return {false, std::move(clause), std::move(witness)}; }
  explicit operator bool() const { return ok; }
};

}  // namespace divfan
