#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitExhausted = 3;

// Runs one invocation; args excludes the program name. Results go to out,
// diagnostics to err. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmon::cli
