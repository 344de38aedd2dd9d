#include "commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qagap/csv.hpp"
#include "qagap/equivalence.hpp"
#include "qagap/errors.hpp"
#include "qagap/evolution.hpp"
#include "qagap/spectral.hpp"

namespace qagap::cli {

namespace {

constexpr int kFig1Samples = 512;
constexpr int kMirrorPoints = 21;
constexpr int kRescalingPoints = 101;
constexpr int kProfileGrid = 1024;
constexpr int kDefaultTrajectory = 100;
constexpr double kDefaultTimeMultiplier = 10.0;

std::string format_of(const RunConfig& c, const char* fallback) {
    const std::string f = c.format.value_or(fallback);
    if (f != "csv" && f != "json") throw ValidationError("--format must be csv or json");
    return f;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

InstanceSpec instance_spec(const RunConfig& c, std::optional<int> n) {
    InstanceSpec spec;
    spec.kind = parse_instance_kind(c.instance);
    spec.level = c.level;
    spec.ground_count = c.ground_count;
    spec.bound = c.bound;
    spec.seed = c.seed;
    if (spec.kind == InstanceKind::ExplicitFile) {
        if (!c.file) throw ValidationError("--instance file needs --file");
        spec.file = *c.file;
    }
    if (n) {
        spec.n = *n;
    } else if (spec.kind != InstanceKind::ExplicitFile) {
        throw ValidationError("--n is required");
    }
    return spec;
}

InstanceSpec single_instance(const RunConfig& c) { return instance_spec(c, c.n); }

std::pair<int, int> n_range(const RunConfig& c) {
    if (c.n_range) return *c.n_range;
    if (c.n) return {*c.n, *c.n};
    throw ValidationError("--n-range or --n is required");
}

bool mirror_path(const RunConfig& c) {
    if (c.path == "uniform") return false;
    if (c.path == "mirror") return true;
    throw ValidationError("--path must be uniform or mirror");
}

GapModel model_for(const RunConfig& c) {
    const auto spec = single_instance(c);
    if (spec.kind == InstanceKind::HammingWeight) {
        if (mirror_path(c)) throw ValidationError("hamming instances have no mirror path");
        return GapModel::hamming(spec.n);
    }
    auto table = build_instance(spec);
    return mirror_path(c) ? GapModel::marked_mirror(std::move(table)) : GapModel::uniform_projector(std::move(table));
}

PathOperator path_for(const RunConfig& c, const InstanceSpec& spec) {
    const auto schedule = parse_schedule(c.schedule);
    if (spec.kind == InstanceKind::HammingWeight) {
        if (mirror_path(c)) throw ValidationError("hamming instances have no mirror path");
        return make_hamming_path(spec.n, schedule);
    }
    const auto table = build_instance(spec);
    return mirror_path(c) ? make_marked_mirror_path(table, 0, schedule) : make_uniform_projector_path(table, schedule);
}

MinGapOptions min_gap_options(const RunConfig& c) {
    MinGapOptions o;
    o.grid = c.grid.value_or(kProfileGrid);
    o.tol = c.tol;
    return o;
}

CommandResult cmd_fig1(const RunConfig& c) {
    const auto table = fig1_instance();
    const double a2 = table.level(1).value;
    const auto fmt = format_of(c, "csv");
    std::ostringstream out;
    nlohmann::json rows = nlohmann::json::array();
    CsvWriter csv(out, {"s", "lambda1", "lambda2", "lambda3", "lambda4", "line_1ms", "line_1ms_a2"});
    bool brackets = true;
    for (int i = 0; i < kFig1Samples; ++i) {
        const double s = static_cast<double>(i) / (kFig1Samples - 1);
        const auto ev = lowest_eigenvalues(table, s, 4);
        const double lower = 1.0 - s;
        const double upper = 1.0 - s + s * a2;
        if (i > 0 && i + 1 < kFig1Samples) {
            brackets = brackets && ev[0] > 0.0 && ev[0] < lower && ev[1] > lower && ev[1] < upper;
        }
        if (fmt == "csv") {
            csv.field(s);
            for (double v : ev) csv.field(v);
            csv.field(lower).field(upper);
            csv.end_row();
        } else {
            rows.push_back({{"s", s}, {"lambda", ev}, {"line_1ms", lower}, {"line_1ms_a2", upper}});
        }
    }
    std::string text = fmt == "csv" ? out.str() : dump({{"brackets_hold", brackets}, {"rows", rows}});
    return {std::move(text), brackets ? kExitPass : kExitVerdictFail};
}

CommandResult cmd_gap(const RunConfig& c) {
    const auto model = model_for(c);
    const auto schedule = parse_schedule(c.schedule);
    const int grid = c.grid.value_or(kProfileGrid);
    if (grid < 2) throw ValidationError("--grid must be >= 2");
    const auto fmt = format_of(c, "csv");
    std::ostringstream out;
    nlohmann::json rows = nlohmann::json::array();
    CsvWriter csv(out, {"u", "s", "scale", "lambda1", "lambda2", "gap"});
    for (int i = 0; i < grid; ++i) {
        const double u = static_cast<double>(i) / (grid - 1);
        const auto np = normalized_point(schedule, u);
        const auto p = model.at(np.s);
        const double l1 = np.scale * p.lambda1;
        const double l2 = np.scale * p.lambda2;
        const double g = np.scale * p.gap;
        if (fmt == "csv") {
            csv.field(u).field(np.s).field(np.scale).field(l1).field(l2).field(g);
            csv.end_row();
        } else {
            rows.push_back({{"u", u}, {"s", np.s}, {"scale", np.scale}, {"lambda1", l1}, {"lambda2", l2}, {"gap", g}});
        }
    }
    if (fmt == "csv") return {out.str(), kExitPass};
    return {dump({{"model", model.description()}, {"schedule", schedule.name()}, {"samples", rows}}), kExitPass};
}

CommandResult cmd_mingap(const RunConfig& c) {
    const auto model = model_for(c);
    const auto schedule = parse_schedule(c.schedule);
    const auto opts = min_gap_options(c);
    const auto profile = min_gap(model, opts);
    const auto fmt = format_of(c, "json");

    nlohmann::json j = to_json(profile, false);
    j["n"] = model.qubits();
    j["model"] = model.description();
    std::optional<PathGapMinimum> path;
    if (!schedule.is_linear()) {
        path = path_min_gap(model, schedule, opts);
        j["path"] = {{"schedule", schedule.name()},
                     {"u_star", path->u_star},
                     {"s_star", path->s_star},
                     {"scale", path->scale},
                     {"g_min", path->g_min}};
    }
    if (fmt == "json") return {dump(j), kExitPass};
    std::ostringstream out;
    CsvWriter csv(out, {"n", "g_min", "s_star", "path_g_min", "u_star"});
    csv.field(static_cast<long long>(model.qubits())).field(profile.g_min).field(profile.s_star);
    path ? csv.field(path->g_min) : csv.blank();
    path ? csv.field(path->u_star) : csv.blank();
    csv.end_row();
    return {out.str(), kExitPass};
}

CommandResult cmd_bounds(const RunConfig& c) {
    const auto model = model_for(c);
    const auto schedule = parse_schedule(c.schedule);
    std::optional<Schedule> path_schedule;
    if (!schedule.is_linear()) path_schedule = schedule;
    const auto report = bound_report(model, c.divisor, path_schedule, min_gap_options(c));
    const int code = report.passed && !report.family_note ? kExitPass : kExitVerdictFail;
    if (format_of(c, "json") == "json") return {dump(to_json(report)), code};
    std::ostringstream out;
    CsvWriter csv(out, {"n", "divisor", "bound", "g_min", "margin", "passed"});
    csv.field(static_cast<long long>(report.n)).field(report.divisor).field(report.bound).field(report.g_min);
    csv.field(report.margin).field(report.passed ? "true" : "false");
    csv.end_row();
    return {out.str(), code};
}

CommandResult cmd_crossing(const RunConfig& c) {
    if (mirror_path(c)) throw ValidationError("crossing lines are defined for the uniform path only");
    const auto spec = single_instance(c);
    if (spec.kind == InstanceKind::HammingWeight) throw ValidationError("crossing lines need a cost table instance");
    const auto table = build_instance(spec);
    const double m = c.m.value_or(exponential_scale(table.qubits(), c.divisor));
    CrossingOptions opts;
    opts.include_lowest = !c.exclude_lowest;
    opts.window_samples = c.window;
    opts.min_gap = min_gap_options(c);
    const auto r = crossing_points(table, m, opts);
    const int code = r.defined && r.ordered && r.bound_holds ? kExitPass : kExitVerdictFail;
    if (format_of(c, "json") == "json") return {dump(to_json(r)), code};
    std::ostringstream out;
    CsvWriter csv(out, {"m", "s1", "s2", "window_gap_max", "two_over_m", "sandwich_holds", "bound_holds"});
    csv.field(r.m).field(r.s1).field(r.s2).field(r.window_gap_max).field(r.two_over_m);
    csv.field(r.sandwich_holds ? "true" : "false").field(r.bound_holds ? "true" : "false");
    csv.end_row();
    return {out.str(), code};
}

CommandResult cmd_budget(const RunConfig& c) {
    const auto path = path_for(c, single_instance(c));
    const int grid = c.grid.value_or(kProfileGrid);
    const auto budget = required_time(path, c.epsilon, grid);
    const int code = budget.unbounded ? kExitVerdictFail : kExitPass;
    if (format_of(c, "json") == "json") return {dump(to_json(budget)), code};
    std::ostringstream out;
    CsvWriter csv(out, {"g_min", "numerator", "epsilon", "t_required"});
    csv.field(budget.g_min).field(budget.numerator).field(budget.epsilon).field(budget.t_required);
    csv.end_row();
    return {out.str(), code};
}

CommandResult cmd_sweep(const RunConfig& c) {
    const auto [first, last] = n_range(c);
    const auto base = instance_spec(c, first);
    SweepOptions opts;
    opts.epsilon = c.epsilon;
    opts.grid = c.grid.value_or(kProfileGrid);
    opts.time_multipliers = c.evolve_multipliers;
    opts.evolve.steps = c.steps;
    const auto rows = run_sweep(base, first, last, parse_schedule(c.schedule), opts);
    if (format_of(c, "csv") == "csv") {
        std::ostringstream out;
        write_sweep_csv(out, rows);
        return {out.str(), kExitPass};
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row = {{"n", r.n}, {"g_min", r.g_min}, {"t_required", r.t_required}};
        if (r.success_probability) row["success_probability"] = *r.success_probability;
        if (r.total_time) row["T"] = *r.total_time;
        if (r.steps) row["steps"] = *r.steps;
        j.push_back(row);
    }
    return {dump({{"rows", j}}), kExitPass};
}

CommandResult cmd_evolve(const RunConfig& c) {
    const auto path = path_for(c, single_instance(c));
    const auto fmt = format_of(c, "json");
    std::optional<AdiabaticBudget> budget;
    double total_time = 0.0;
    if (c.time) {
        total_time = *c.time;
    } else {
        budget = required_time(path, c.epsilon, c.grid.value_or(kProfileGrid));
        total_time = kDefaultTimeMultiplier * budget->t_required;
    }
    EvolveOptions opts;
    opts.steps = c.steps;
    opts.trajectory_samples = c.trajectory > 0 ? c.trajectory : (fmt == "csv" ? kDefaultTrajectory : 0);
    const auto result = evolve(path, total_time, opts);
    const double threshold = 1.0 - c.epsilon * c.epsilon;
    const bool passed = result.success_probability >= threshold && result.converged;
    const int code = passed ? kExitPass : kExitVerdictFail;
    if (fmt == "csv") {
        std::ostringstream out;
        write_trajectory_csv(out, result.trajectory);
        return {out.str(), code};
    }
    nlohmann::json j = to_json(result, c.trajectory > 0);
    j["threshold"] = threshold;
    j["passed"] = passed;
    if (budget) j["budget"] = to_json(*budget);
    return {dump(j), code};
}

CommandResult cmd_equiv(const RunConfig& c) {
    const auto spec = single_instance(c);
    if (spec.kind == InstanceKind::HammingWeight) throw ValidationError("equivalence checks need a cost table instance");
    const auto table = build_instance(spec);
    EquivalenceVerdict verdict;
    bool passed = false;
    if (c.check == "mirror") {
        verdict = mirror_invariance_check(table, c.grid.value_or(kMirrorPoints));
        passed = verdict.passed;
    } else if (c.check == "rescaling") {
        verdict = path_rescaling_check(table, parse_schedule(c.schedule), c.grid.value_or(kRescalingPoints));
        passed = verdict.passed && verdict.summary.at("inequality_holds").get<bool>();
    } else {
        throw ValidationError("--check must be mirror or rescaling");
    }
    const int code = passed ? kExitPass : kExitVerdictFail;
    if (format_of(c, "json") == "json") return {dump(to_json(verdict)), code};
    std::ostringstream out;
    CsvWriter csv(out, {"check", "max_dev", "tolerance", "passed"});
    csv.field(verdict.check).field(verdict.max_dev).field(verdict.tolerance).field(passed ? "true" : "false");
    csv.end_row();
    return {out.str(), code};
}

using Handler = std::function<CommandResult(const RunConfig&)>;

const std::map<std::string_view, Handler>& handlers() {
    static const std::map<std::string_view, Handler> table = {
        {"fig1", cmd_fig1},   {"gap", cmd_gap},     {"mingap", cmd_mingap}, {"bounds", cmd_bounds},
        {"crossing", cmd_crossing}, {"budget", cmd_budget}, {"sweep", cmd_sweep}, {"evolve", cmd_evolve},
        {"equiv", cmd_equiv}};
    return table;
}

}  // namespace

const std::vector<CommandInfo>& command_table() {
    static const std::vector<CommandInfo> table = {
        {"fig1", "Four lowest eigenvalues of the 16-state reference instance with the two guide lines"},
        {"gap", "Lowest pair and gap sampled along the path"},
        {"mingap", "Minimum gap and its location"},
        {"bounds", "Minimum gap against 2 / 2^(n/2 - n/divisor)"},
        {"crossing", "Crossing points of the guide lines and the window sandwich test"},
        {"budget", "Adiabatic running-time budget"},
        {"sweep", "Gap and required time over a range of n, optionally evolving each cell"},
        {"evolve", "Schroedinger evolution along the path"},
        {"equiv", "Mirror invariance or schedule rescaling check"},
    };
    return table;
}

CommandResult run_command(const RunConfig& config) {
    const auto& table = handlers();
    const auto it = table.find(config.command);
    if (it == table.end()) throw ValidationError("unknown command '" + config.command + "'");
    return it->second(config);
}

}  // namespace qagap::cli
