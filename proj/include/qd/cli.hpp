#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qd::cli {

/// Dispatch one command line (without the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 input error, 2 internal error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qd::cli
