#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssprobe {

enum class ErrorCode {
  // phonology
  UnknownPhone,
  NotThreeSyllables,
  Rule1Violation,
  Rule2Violation,
  Rule3Violation,
  // stimuli
  DuplicateSpeaker,
  SchemaViolation,
  // embedstore
  IoFailure,
  FormatViolation,
  InvalidSet,
  EmptyResult,
  // probe
  EmptyClass,
  ZeroDirection,
  ZeroNormInput,
  DimMismatch,
  // metrics
  OneClassOnly,
  AllScoresTied,
  LengthMismatch,
  // report
  UnresolvedId,
  InvalidArgument,
};

std::string_view errorCodeName(ErrorCode code);

/// Every failure raised by the toolkit. `what()` is "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssprobe
