#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nevlab/function_handle.hpp"
#include "nevlab/types.hpp"

namespace nevlab {

/// "4", "0.5+14.13i", "-2.5i", "i", "3-1e-3i".
Complex parse_complex(const std::string& text);

/// Comma-separated complex numbers; a repeated entry adds multiplicity.
PointList parse_points(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_reals(const std::string& text);

/// Runs the command line (without the program name). Reports go to the
/// paths given by --json/--csv or, for JSON, to `out`. Returns the exit code:
/// 0 all verdicts pass, 1 usage or runtime error, 2 a failed verdict,
/// 3 findings.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nevlab
