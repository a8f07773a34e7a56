#pragma once

#include <iosfwd>

namespace carpet::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kNonMetric = 3,
  kUnreachable = 4,
  kViolation = 5,
};

/// The carpet-metric tool. Returns the process exit code; all output goes
/// to `out` / `err` (or to --out files).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace carpet::cli
