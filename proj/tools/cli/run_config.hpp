#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qagap::cli {

/// Every input of one CLI invocation. Keys of the JSON form match the long
/// flag names without the leading dashes.
struct RunConfig {
    std::string command;

    std::string instance = "grover";
    std::optional<std::string> file;
    std::optional<int> n;
    std::optional<std::pair<int, int>> n_range;
    double level = 1.0;
    std::uint64_t ground_count = 1;
    double bound = 100.0;
    std::uint64_t seed = 0;

    /// "uniform" or "mirror".
    std::string path = "uniform";
    std::string schedule = "linear";

    /// Command-specific default when absent.
    std::optional<int> grid;
    double tol = 1e-9;
    std::optional<double> m;
    double divisor = 100.0;
    bool exclude_lowest = false;
    int window = 10000;

    double epsilon = 0.1;
    std::optional<double> time;
    std::optional<std::int64_t> steps;
    int trajectory = 0;
    /// Sweep cells evolve at T = multiplier * t_required.
    std::vector<double> evolve_multipliers;

    /// "mirror" or "rescaling".
    std::string check = "mirror";

    std::optional<std::string> out;
    std::optional<std::string> format;
};

/// Parses "a..b" or a single integer "a".
std::pair<int, int> parse_n_range(const std::string& text);

/// Overwrites the fields present in j; unknown keys throw.
void merge_config(RunConfig& config, const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace qagap::cli
