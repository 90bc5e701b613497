#pragma once

// Command-line front end. Every subcommand writes one JSON document to `out`
// and returns the process exit code:
//   0 success (negative verdicts included), 2 bad input or precondition,
//   3 size limit exceeded, 4 internal verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace pmfiber::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSizeLimit = 3;
inline constexpr int kExitVerification = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmfiber::cli
