#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace akg {

/// Error codes surfaced to callers and serialized by the CLI.
enum class ErrorCode {
  DimensionMismatch,
  EmptyGenerators,
  NotPointed,
  NotFullDimensional,
  NotEffective,
  NotInLattice,
  MissingComaximalData,
  RequiresLocalBase,
  FormatViolation,
  ImmediateContradiction,
  InternalInconsistency,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyGenerators: return "EmptyGenerators";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotEffective: return "NotEffective";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::MissingComaximalData: return "MissingComaximalData";
    case ErrorCode::RequiresLocalBase: return "RequiresLocalBase";
    case ErrorCode::FormatViolation: return "FormatViolation";
    case ErrorCode::ImmediateContradiction: return "ImmediateContradiction";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// Domain error: bad input for a well-formed request, or a detected bug
/// (InternalInconsistency).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace akg
