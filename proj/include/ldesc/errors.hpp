#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ldesc {

enum class ErrorCode {
  InvalidDescriptor,
  NotInField,
  NegativeValuation,
  NoInvolution,
  ContextMismatch,
  Singular,
  DimensionMismatch,
  DegenerateForm,
  InvalidForm,
  GroupTooLarge,
  NotContained,
  PreconditionViolated,
  KindMismatch,
  NotFiniteOrder,
  HypothesisViolated,
  NotStable,
  NotIsometry,
  CharTwo,
  SearchSpaceTooLarge,
  InternalInconsistency,
  Parse,
};

std::string_view error_code_name(ErrorCode code);

/// All library failures are reported through this one exception type; the
/// code is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::NotInField: return "NotInField";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::NoInvolution: return "NoInvolution";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::InvalidForm: return "InvalidForm";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NotFiniteOrder: return "NotFiniteOrder";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace ldesc
