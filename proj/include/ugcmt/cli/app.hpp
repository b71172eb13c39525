#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ugcmt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Runs the ugcmt command line. `args` excludes the program name. Exit
/// codes: 0 success, 1 data error, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace ugcmt::cli
