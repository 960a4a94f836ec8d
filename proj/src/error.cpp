#include "sublinear/error.hpp"

namespace sublinear {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NEGATIVE_WEIGHT";
    case ErrorCode::kWeightSum: return "WEIGHT_SUM";
    case ErrorCode::kOffLattice: return "OFF_LATTICE";
    case ErrorCode::kEmptySet: return "EMPTY_SET";
    case ErrorCode::kBadLattice: return "BAD_LATTICE";
    case ErrorCode::kUnboundedEval: return "UNBOUNDED_EVAL";
    case ErrorCode::kUnboundedFunction: return "UNBOUNDED_F";
    case ErrorCode::kStateBudgetExceeded: return "STATE_BUDGET_EXCEEDED";
    case ErrorCode::kUnsupportedEvent: return "UNSUPPORTED_EVENT";
    case ErrorCode::kPolicyGap: return "POLICY_GAP";
    case ErrorCode::kEnumerationBudgetExceeded: return "ENUMERATION_BUDGET_EXCEEDED";
    case ErrorCode::kBadInterval: return "BAD_INTERVAL";
    case ErrorCode::kTruncationTooSmall: return "TRUNCATION_TOO_SMALL";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kConfig: return "CONFIG";
  }
  return "UNKNOWN";
}

bool is_budget_error(ErrorCode code) {
  return code == ErrorCode::kStateBudgetExceeded ||
         code == ErrorCode::kEnumerationBudgetExceeded ||
         code == ErrorCode::kTruncationTooSmall;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace sublinear
