#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gridnadir {

struct RunResult {
    int exit_code = -1;
    bool exec_failed = false;  // the executable could not be started
};

/// Runs argv[0] with the given arguments, redirecting stdout/stderr into the
/// given files (either may be empty to inherit). Blocks until exit.
RunResult run_process(const std::vector<std::string>& argv,
                      const std::filesystem::path& stdout_file = {},
                      const std::filesystem::path& stderr_file = {});

}  // namespace gridnadir
