#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssprobe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `ssprobe` executable. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace ssprobe::cli
