#pragma once

#include <iosfwd>

namespace srp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
  kExitCheckFailed = 4,
};

/// Entry point of the `srp` tool (subcommands gen, embed, bench, check).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srp::cli
