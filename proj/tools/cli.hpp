#ifndef GOLDSTEIN_TOOLS_CLI_HPP
#define GOLDSTEIN_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace goldstein::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFailure = 2;

/// Entry point shared by the executable and the tests. Subcommands: solve,
/// bisect-demo, table1, gs-compare. Tabular results go to `out` (or --out),
/// status lines and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Parses "1,2.5,-3e-1" into numbers; throws InvalidArgument on bad input.
std::vector<double> parse_list(const std::string& text);

/// Shortest round-trip decimal form ("%.17g") used for every numeric cell.
std::string format_number(double x);

}  // namespace goldstein::cli

#endif  // GOLDSTEIN_TOOLS_CLI_HPP
