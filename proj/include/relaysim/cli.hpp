#pragma once

#include <ostream>
#include <span>
#include <string>

namespace relaysim::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kGraphError = 3,
    kDomainError = 4,
};

/// Entry point shared by the `relaysim` binary and the tests. `args` excludes
/// the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace relaysim::cli
