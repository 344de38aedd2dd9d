#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "qagap/errors.hpp"

namespace qagap::cli {

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

template <typename T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

std::pair<int, int> parse_n_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        const int n = parse_int(text);
        return {n, n};
    }
    const int first = parse_int(std::string_view(text).substr(0, sep));
    const int last = parse_int(std::string_view(text).substr(sep + 2));
    if (last < first) throw ValidationError("n range '" + text + "' is empty");
    return {first, last};
}

void merge_config(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    static const std::set<std::string> known = {
        "command", "instance", "file",     "n",          "n-range", "level",      "ground-count", "bound",
        "seed",    "path",     "schedule", "grid",       "tol",     "m",          "divisor",      "exclude-lowest",
        "window",  "epsilon",  "time",     "steps",      "trajectory", "evolve",  "check",        "out",
        "format"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
    }
    take(j, "command", c.command);
    take(j, "instance", c.instance);
    take(j, "file", c.file);
    take(j, "n", c.n);
    if (j.contains("n-range")) c.n_range = parse_n_range(j.at("n-range").get<std::string>());
    take(j, "level", c.level);
    take(j, "ground-count", c.ground_count);
    take(j, "bound", c.bound);
    take(j, "seed", c.seed);
    take(j, "path", c.path);
    take(j, "schedule", c.schedule);
    take(j, "grid", c.grid);
    take(j, "tol", c.tol);
    take(j, "m", c.m);
    take(j, "divisor", c.divisor);
    take(j, "exclude-lowest", c.exclude_lowest);
    take(j, "window", c.window);
    take(j, "epsilon", c.epsilon);
    take(j, "time", c.time);
    take(j, "steps", c.steps);
    take(j, "trajectory", c.trajectory);
    take(j, "evolve", c.evolve_multipliers);
    take(j, "check", c.check);
    take(j, "out", c.out);
    take(j, "format", c.format);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file '" + path + "': " + e.what());
    }
    RunConfig config;
    merge_config(config, j);
    return config;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j = {{"command", c.command},   {"instance", c.instance}, {"level", c.level},
                        {"ground-count", c.ground_count}, {"bound", c.bound}, {"seed", c.seed},
                        {"path", c.path},         {"schedule", c.schedule},
                        {"tol", c.tol},           {"divisor", c.divisor},   {"exclude-lowest", c.exclude_lowest},
                        {"window", c.window},     {"epsilon", c.epsilon},   {"trajectory", c.trajectory},
                        {"evolve", c.evolve_multipliers}, {"check", c.check}};
    if (c.file) j["file"] = *c.file;
    if (c.n) j["n"] = *c.n;
    if (c.n_range) j["n-range"] = std::to_string(c.n_range->first) + ".." + std::to_string(c.n_range->second);
    if (c.grid) j["grid"] = *c.grid;
    if (c.m) j["m"] = *c.m;
    if (c.time) j["time"] = *c.time;
    if (c.steps) j["steps"] = *c.steps;
    if (c.out) j["out"] = *c.out;
    if (c.format) j["format"] = *c.format;
    return j;
}

}  // namespace qagap::cli
