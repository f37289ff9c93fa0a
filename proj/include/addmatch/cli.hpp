#pragma once

#include <string>
#include <vector>

namespace addmatch::cli {

struct RunResult {
  int exit_code = 0;
  std::string output;  // report text; empty when written to --out
  std::string error;
};

inline constexpr int kExitDecided = 0;
inline constexpr int kExitFound = 1;
inline constexpr int kExitError = 2;

/// args excludes the program name: {"match", "Z15", "A={5,6,7}", ...}.
RunResult run(const std::vector<std::string>& args);

}  // namespace addmatch::cli
