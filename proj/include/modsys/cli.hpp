#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modsys {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
} // namespace exit_code

/// Entry point behind the `modsys` executable. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace modsys
