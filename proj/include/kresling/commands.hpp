#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kresling {

/// Entry point of the `kresling` tool. Returns the process exit status:
/// 0 on success, 1 for a failed command or check, 2 for a usage error.
/// Errors are written to `err` as one line, `error[<kind>]: <message>`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `start:stop:count` into count evenly spaced values.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace kresling
