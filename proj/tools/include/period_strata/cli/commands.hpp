#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace period_strata::cli {

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_input = 2 };

// args excludes the program name
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace period_strata::cli
