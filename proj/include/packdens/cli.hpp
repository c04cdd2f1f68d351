#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace packdens {

// Exit codes: 0 certified or success, 1 violation, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

// Runs the packdens command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace packdens
