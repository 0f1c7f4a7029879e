#pragma once

#include <iosfwd>
#include <string>

namespace heun::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kSolverFailure = 3,
  kValidationFailure = 4,
};

/// Entry point of the heun_spectra tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 12 significant digits, lowercase scientific ("%.11e").
std::string format_float(double x);

}  // namespace heun::cli
