#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qproc::cli {

enum ExitCode {
    kExitOk = 0,
    /// A check fails, or the input does not parse, typecheck or pass well-formedness.
    kExitFails = 1,
    kExitInconclusive = 2,
    kExitUsage = 3,
};

/// Runs one command. `args` excludes the program name, e.g. {"run", "teleport.cqp", "--script", "0"}.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qproc::cli
