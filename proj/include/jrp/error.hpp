#pragma once

#include <stdexcept>
#include <string>

namespace jrp {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedDocument,
  kNonPositive,
  kUnknownClass,
  kDuplicateId,
  kCoverageMismatch,
  kUnclassed,
  kMissingConstants,
  kCapExceeded,
  kConfigRejected,
  kDimacsMissingHeader,
  kDimacsBadHeader,
  kDimacsLiteralOutOfRange,
  kDimacsUnterminatedClause,
  kDimacsCountMismatch,
  kDimacsBadToken,
  kNot3Sat,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-checkable code so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jrp
