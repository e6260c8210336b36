#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperrefl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kGeometry = 3,
  kInconclusive = 4,
  kResource = 5,
};

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "pi/3" for pi/k angles, a decimal otherwise.
std::string format_angle(double angle);

/// Shortest decimal with at least one fractional digit ("1.0", "0.25").
std::string format_real(double v);

}  // namespace hyperrefl::cli
