#ifndef SPECTORI_RUNNER_HPP
#define SPECTORI_RUNNER_HPP

#include "spectori/io.hpp"

namespace spectori {

// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 check failure.
struct RunResult {
    int exitCode = 0;
    Json report;
};

extern const std::vector<std::string> kSubcommands;

RunResult runSubcommand(const std::string& name, Json config, const std::string& outDir);

// Applies "key.path=value" overrides on top of a config document.
void applyOverride(Json& config, const std::string& keyValue);

}  // namespace spectori

#endif
