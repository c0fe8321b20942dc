#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmhop {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "CMHOP_OUTPUT_DIR";

// Entry point of the cmhop tool: simulate | limitcheck | diagnose | oracle.
// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1e3,1e4,100000" -> {1000, 10000, 100000}. Throws InputError.
std::vector<std::size_t> parse_size_list(const std::string& text);

// Flat key=value config file -> "--key=value" tokens. '#' starts a comment.
std::vector<std::string> read_config_tokens(const std::string& path);

}  // namespace cmhop
