#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "run_config.hpp"

namespace qagap::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdictFail = 2;

struct CommandResult {
    std::string output;
    int exit_code = kExitPass;
};

struct CommandInfo {
    std::string_view name;
    std::string_view summary;
};

const std::vector<CommandInfo>& command_table();

/// Runs config.command. Library validation errors propagate as exceptions.
CommandResult run_command(const RunConfig& config);

}  // namespace qagap::cli
