#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqs::cli {

/// Runs the command line; returns the process exit status (0, or 2/3/4 by error family, 1 for usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace aqs::cli
