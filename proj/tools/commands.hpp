#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace heatrate::cli {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kInfeasible = 3 };

/// Runs one command line (without the program name). Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatrate::cli
