#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sublinear {

enum class ErrorCode {
  kNegativeWeight,
  kWeightSum,
  kOffLattice,
  kEmptySet,
  kBadLattice,
  kUnboundedEval,
  kUnboundedFunction,
  kStateBudgetExceeded,
  kUnsupportedEvent,
  kPolicyGap,
  kEnumerationBudgetExceeded,
  kBadInterval,
  kTruncationTooSmall,
  kInvalidArgument,
  kConfig,
};

std::string_view to_string(ErrorCode code);

// True for the codes that signal an exhausted computational budget rather
// than malformed input.
bool is_budget_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace sublinear
