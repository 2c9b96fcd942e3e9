#pragma once

// Command-line front end. run() does not throw: errors are reported on
// `err` and mapped to exit codes.

#include <iosfwd>
#include <string>
#include <vector>

namespace spincc::cli {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;  // invariant violation or a failed check
constexpr int kExitBadInput = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spincc::cli
