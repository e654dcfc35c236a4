#pragma once

#include <iosfwd>

namespace vpl {

// Process exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitBlowUp = 3,
  kExitCapExceeded = 4,
  kExitUnknownPredicate = 5,
  kExitUsage = 64,
};

// Subcommands: solve, oracle, magic, gen-smokers. See README.md.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vpl
