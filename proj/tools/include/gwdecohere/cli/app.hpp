#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gwd::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidConfig = 1,
    kExitNumerical = 2,
    kExitIo = 3,
};

/// Full command-line entry point; args excludes the program name.
///   gw-decohere <job> --config <file.json> [--out <path>] [--format csv|json] [--seed <u64>]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwd::cli
