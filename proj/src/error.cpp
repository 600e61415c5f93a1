#include "ssprobe/error.hpp"

namespace ssprobe {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPhone: return "UnknownPhone";
    case ErrorCode::NotThreeSyllables: return "NotThreeSyllables";
    case ErrorCode::Rule1Violation: return "Rule1Violation";
    case ErrorCode::Rule2Violation: return "Rule2Violation";
    case ErrorCode::Rule3Violation: return "Rule3Violation";
    case ErrorCode::DuplicateSpeaker: return "DuplicateSpeaker";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::FormatViolation: return "FormatViolation";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::ZeroNormInput: return "ZeroNormInput";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::OneClassOnly: return "OneClassOnly";
    case ErrorCode::AllScoresTied: return "AllScoresTied";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnresolvedId: return "UnresolvedId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(errorCodeName(code)) + ": " + detail), code_(code) {}

}  // namespace ssprobe
