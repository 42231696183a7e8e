#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace tcpl::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kData = 3,
    kNoAugmenter = 4,
    kConfig = 5,
    kRuntime = 6,
};

/// Stable exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Runs `tcpl` with `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcpl::cli
