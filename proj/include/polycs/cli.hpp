#pragma once

#include <iosfwd>

namespace polycs::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  /// A construction hypothesis failed, a verified set is not complementary,
  /// or a golden table check did not match.
  kHypothesis = 1,
  /// Bad usage, unreadable input or malformed GBF / sequence / JSON text.
  kUsage = 2,
};

/// Runs one command. The machine-readable report goes to `out`, a short
/// human summary and all diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polycs::cli
