#pragma once

// Command-line front end; run_cli is the whole program minus process exit.

#include <iosfwd>
#include <string>
#include <vector>

namespace symstable::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsupported = 3;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "v", "a,b,c" or "start:stop:step" (inclusive of stop up to rounding).
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_values(const std::string& spec);

/// One real per line; blank lines and text after '#' are ignored.
/// Throws std::runtime_error if unreadable or empty.
std::vector<double> read_data_file(const std::string& path);

/// Shortest form that is at most 17 significant digits ("%.17g").
std::string format_real(double v);

}  // namespace symstable::cli
