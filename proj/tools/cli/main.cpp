#include <cstring>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qagap/errors.hpp"
#include "run_config.hpp"

namespace {

using qagap::cli::RunConfig;

// Finds --config before parsing so that flags given on the command line override the file.
std::optional<std::string> config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return std::string(argv[i + 1]);
        if (std::strncmp(argv[i], "--config=", 9) == 0) return std::string(argv[i] + 9);
    }
    return std::nullopt;
}

void add_options(CLI::App& app, RunConfig& c) {
    app.add_option("--config", "JSON file of option values; flags override it");
    app.add_option_function<std::string>("--instance", [&](const std::string& v) { c.instance = v; },
                                         "grover | two-level | hamming | random | file");
    app.add_option_function<std::string>("--file", [&](const std::string& v) { c.file = v; },
                                         "Instance JSON {\"n\", \"entries\": [{\"value\", \"mult\"}]}");
    app.add_option_function<int>("--n", [&](const int& v) { c.n = v; }, "Qubit count");
    app.add_option_function<std::string>(
        "--n-range", [&](const std::string& v) { c.n_range = qagap::cli::parse_n_range(v); }, "Qubit range a..b");
    app.add_option_function<double>("--level", [&](const double& v) { c.level = v; }, "Two-level excited value");
    app.add_option_function<std::uint64_t>("--ground-count", [&](const std::uint64_t& v) { c.ground_count = v; },
                                           "Two-level ground multiplicity");
    app.add_option_function<double>("--bound", [&](const double& v) { c.bound = v; }, "Cost value bound");
    app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { c.seed = v; },
                                           "Seed for random instances");
    app.add_option_function<std::string>("--path", [&](const std::string& v) { c.path = v; }, "uniform | mirror");
    app.add_option_function<std::string>("--schedule", [&](const std::string& v) { c.schedule = v; },
                                         "linear | power:<p> | smoothstep | bulge:<k> | table JSON file");
    app.add_option_function<int>("--grid", [&](const int& v) { c.grid = v; }, "Grid size (command default if absent)");
    app.add_option_function<double>("--tol", [&](const double& v) { c.tol = v; }, "Minimiser tolerance");
    app.add_option_function<double>("--m", [&](const double& v) { c.m = v; }, "Crossing-line parameter m");
    app.add_option_function<double>("--divisor", [&](const double& v) { c.divisor = v; },
                                    "Exponent divisor d in 2^(n/2 - n/d)");
    app.add_flag_function("--exclude-lowest", [&](std::int64_t) { c.exclude_lowest = true; },
                          "Drop the lowest level from the crossing-point sums");
    app.add_option_function<int>("--window", [&](const int& v) { c.window = v; }, "Crossing window samples");
    app.add_option_function<double>("--epsilon", [&](const double& v) { c.epsilon = v; }, "Adiabatic target error");
    app.add_option_function<double>("--time", [&](const double& v) { c.time = v; }, "Total evolution time T");
    app.add_option_function<std::int64_t>("--steps", [&](const std::int64_t& v) { c.steps = v; }, "Integrator steps");
    app.add_option_function<int>("--trajectory", [&](const int& v) { c.trajectory = v; },
                                 "Trajectory sample intervals");
    app.add_option_function<std::vector<double>>(
           "--evolve", [&](const std::vector<double>& v) { c.evolve_multipliers = v; },
           "Sweep: evolve at these multiples of the required time")
        ->delimiter(',');
    app.add_option_function<std::string>("--check", [&](const std::string& v) { c.check = v; },
                                         "equiv: mirror | rescaling");
    app.add_option_function<std::string>("--out", [&](const std::string& v) { c.out = v; }, "Output file (stdout if absent)");
    app.add_option_function<std::string>("--format", [&](const std::string& v) { c.format = v; }, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int usage_error(const CLI::App& app, const std::string& message) {
    std::cerr << "error: " << message << "\n\n" << app.help();
    return qagap::cli::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-gap analysis and adiabatic evolution for interpolation paths", "qagap"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    RunConfig config;
    try {
        if (const auto path = config_path(argc, argv)) config = qagap::cli::load_config(*path);
    } catch (const std::exception& e) {
        return usage_error(app, e.what());
    }
    add_options(app, config);
    for (const auto& info : qagap::cli::command_table()) {
        app.add_subcommand(std::string(info.name), std::string(info.summary));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return usage_error(app, e.what());
    }
    if (const auto subs = app.get_subcommands(); !subs.empty()) config.command = subs.front()->get_name();
    if (config.command.empty()) return usage_error(app, "no command given");

    qagap::cli::CommandResult result;
    try {
        result = qagap::cli::run_command(config);
    } catch (const qagap::IntegrationError& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return qagap::cli::kExitVerdictFail;
    } catch (const std::exception& e) {
        return usage_error(app, e.what());
    }

    if (config.out) {
        std::ofstream out(*config.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open '" << *config.out << "' for writing\n";
            return qagap::cli::kExitUsage;
        }
        out << result.output;
    } else {
        std::cout << result.output;
    }
    return result.exit_code;
}
