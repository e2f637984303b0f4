#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oemi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;     // bad config, flags or parameters
inline constexpr int kExitNumerical = 3;  // singular matrix, non-convergence, ...

// Runs one `oemi` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace oemi::cli
