#pragma once

#include <iostream>

namespace laglab {

/// Exit statuses of the command-line harness.
enum ExitCode : int { kExitPass = 0, kExitError = 1, kExitFail = 2, kExitUsage = 64, kExitNoInput = 66 };

/// Entry point of `laglab run|validate|list-catalog|version`.
/// LAGLAB_OUTPUT_DIR overrides the report directory of the config.
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace laglab
