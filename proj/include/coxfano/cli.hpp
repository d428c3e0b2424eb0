#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxfano::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 1,
    resource_limit = 2,
    invalid_data = 3,
    fixture_failure = 4,
};

/// Runs the coxfano command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace coxfano::cli
