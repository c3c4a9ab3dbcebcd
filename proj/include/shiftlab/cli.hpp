#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shiftlab::cli {

// Exit status: 0 success, 1 verification failure, 2 usage or schema error.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftlab::cli
