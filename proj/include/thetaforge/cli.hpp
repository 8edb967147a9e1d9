#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thetaforge::cli {

/// Exit codes: 0 success or passing check, 1 failed check, 2 usage or input error.
enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// args excludes the program name. Reports go to `out`, diagnostics and
/// timing to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace thetaforge::cli
