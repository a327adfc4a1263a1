#include "jrp/error.hpp"

namespace jrp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kMalformedDocument: return "malformed-document";
    case ErrorCode::kNonPositive: return "non-positive";
    case ErrorCode::kUnknownClass: return "unknown-class";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kCoverageMismatch: return "coverage-mismatch";
    case ErrorCode::kUnclassed: return "unclassed";
    case ErrorCode::kMissingConstants: return "missing-constants";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kConfigRejected: return "config-rejected";
    case ErrorCode::kDimacsMissingHeader: return "dimacs-missing-header";
    case ErrorCode::kDimacsBadHeader: return "dimacs-bad-header";
    case ErrorCode::kDimacsLiteralOutOfRange: return "dimacs-literal-out-of-range";
    case ErrorCode::kDimacsUnterminatedClause: return "dimacs-unterminated-clause";
    case ErrorCode::kDimacsCountMismatch: return "dimacs-count-mismatch";
    case ErrorCode::kDimacsBadToken: return "dimacs-bad-token";
    case ErrorCode::kNot3Sat: return "not-3sat";
  }
  return "unknown";
}

}  // namespace jrp
