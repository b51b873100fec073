#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsu {

enum class ErrorCode {
  NotLatinSquare,
  NoIdentity,
  NotAssociative,
  OrderCapExceeded,
  InvalidParameter,
  NotAutomorphism,
  NotHomomorphism,
  NotNormal,
  UnsupportedFormation,
  FormationAssertionFailed,
  HypothesisNotMet,
  NoCandidatePassesBundle,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::UnsupportedFormation: return "UnsupportedFormation";
    case ErrorCode::FormationAssertionFailed: return "FormationAssertionFailed";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::NoCandidatePassesBundle: return "NoCandidatePassesBundle";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a code so callers can branch
// on the kind without parsing messages.
class GroupError : public std::runtime_error {
 public:
  GroupError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wsu
