#pragma once

#include <string>
#include <vector>

namespace jewelbox::cli {

/// Full command-line surface; returns the process exit code (0 success,
/// 1 failed checks or invalid input, 2 usage/parse errors).
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace jewelbox::cli
