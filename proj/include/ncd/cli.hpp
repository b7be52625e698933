#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ncd::cli {

inline constexpr int kExitDecision = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;

struct CommandResult {
    std::string command;
    nlohmann::json payload;
    int exit_code = kExitDecision;
    std::string diagnostics; // stderr text; help output goes in `text`
    std::string text;
};

// args excludes the program name.
CommandResult run(const std::vector<std::string> &args);

// Runs and writes the payload (or help text) to stdout, diagnostics to stderr.
int main(int argc, char **argv);

} // namespace ncd::cli
