#ifndef QCA_TOOLS_CLI_H
#define QCA_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qca::cli {

/// Exit status for rejected flags, angles, or initial conditions.
inline constexpr int kUsageError = 2;

/// Parses an angle literal in radians: a decimal ("1", "-0.25", "1e-3") or a
/// multiple of pi ("pi", "-pi", "pi/4", "3*pi/4", "-3*pi/4", "2pi/3").
/// Throws std::invalid_argument on anything else.
double parse_angle(const std::string &text);

/// Runs one subcommand. `args` excludes the program name. Output files go to
/// `--out` (or `out` when it is "-"), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qca::cli

#endif
