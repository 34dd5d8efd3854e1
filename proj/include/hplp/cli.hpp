#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hplp::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kIllDefined = 1;  // also: validation error without --force
inline constexpr int kUnverified = 2;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;  // lexical or syntax error in program or query
inline constexpr int kNoInput = 66;
inline constexpr int kInferenceError = 70;  // runtime error during inference

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hplp::cli
