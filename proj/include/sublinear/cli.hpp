#pragma once

#include <iosfwd>

namespace sublinear::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitViolation = 3;

// Parses argv, runs one subcommand, writes its reports and prints a one-line
// summary to `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sublinear::cli
