#include "qagap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qagap/errors.hpp"
#include "qagap/minimize.hpp"

namespace qagap {

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SignedLog char_poly_log(const SpectrumTable& table, double s, double lambda) {
    const double rho = 1.0 - s;
    const double inv_dim = 1.0 / static_cast<double>(table.dimension());
    double log_abs = 0.0;
    int sign = 1;
    double resolvent = 0.0;
    std::uint64_t zero_count = 0;
    for (const auto& lv : table.levels()) {
        const double diff = 1.0 - s - lambda + s * lv.value;
        if (diff == 0.0) {
            zero_count += lv.multiplicity;
            continue;
        }
        log_abs += static_cast<double>(lv.multiplicity) * std::log(std::abs(diff));
        if (diff < 0.0 && lv.multiplicity % 2 == 1) sign = -sign;
        resolvent += static_cast<double>(lv.multiplicity) / diff;
    }
    if (zero_count >= 2) return {0.0, 0};
    if (zero_count == 1) {
        // Only the rank-one term survives: -(rho/N) prod_{k != j} (d_k - lambda).
        if (rho == 0.0) return {0.0, 0};
        return {log_abs + std::log(std::abs(rho) * inv_dim), rho > 0.0 ? -sign : sign};
    }
    const double factor = 1.0 - rho * inv_dim * resolvent;
    if (factor == 0.0) return {0.0, 0};
    return {log_abs + std::log(std::abs(factor)), factor < 0.0 ? -sign : sign};
}

double char_poly_eval(const SpectrumTable& table, double s, double lambda) {
    return char_poly_log(table, s, lambda).value();
}

std::vector<double> lowest_eigenvalues(const SpectrumTable& table, double s, std::uint64_t k) {
    if (k > table.dimension()) throw ValidationError("requested more eigenvalues than the dimension");
    std::vector<double> out;
    for (const auto& run : RankOneSystem::linear(table, s).lowest_runs(k)) out.insert(out.end(), run.multiplicity, run.value);
    return out;
}

std::vector<EigenRun> full_spectrum(const SpectrumTable& table, double s) {
    return RankOneSystem::linear(table, s).spectrum();
}

std::vector<double> expanded_spectrum(const SpectrumTable& table, double s) {
    if (table.qubits() > kMaxEnumerationQubits) throw CapacityError("spectrum too large to expand");
    return lowest_eigenvalues(table, s, table.dimension());
}

GapPoint gap_point(const SpectrumTable& table, double s) {
    const auto values = lowest_eigenvalues(table, s, 2);
    GapPoint p;
    p.s = s;
    p.lambda1 = values[0];
    p.lambda2 = values.size() > 1 ? values[1] : values[0];
    p.gap = p.lambda2 - p.lambda1;
    p.degenerate = p.gap <= 0.0;
    if (p.gap < 0.0) p.gap = 0.0;
    return p;
}

double gap(const SpectrumTable& table, double s) { return gap_point(table, s).gap; }

GroundExcitedPair ground_excited_vectors(const SpectrumTable& table, double s) {
    const auto sys = RankOneSystem::linear(table, s);
    const std::size_t levels = table.distinct_count();
    GroundExcitedPair out;
    out.ground.assign(levels, 0.0);
    out.excited.assign(levels, 0.0);

    if (sys.rho() == 0.0) {
        if (table.level(0).multiplicity > 1 || levels < 2) {
            throw DeflatedEigenvectorError("ground level is degenerate at s = 1");
        }
        out.lambda1 = sys.pole(0);
        out.lambda2 = sys.pole(1);
        out.ground[0] = 1.0;
        out.excited[1] = 1.0;
        return out;
    }

    const auto runs = sys.lowest_runs(2);
    if (runs.size() < 2 || runs[0].deflated || runs[1].deflated || runs[0].multiplicity > 1) {
        throw DeflatedEigenvectorError("first excited eigenvalue is deflated at s = " + std::to_string(s));
    }
    out.lambda1 = runs[0].value;
    out.lambda2 = runs[1].value;
    const auto g = sys.root_vector(0, out.lambda1);
    const auto e = sys.root_vector(1, out.lambda2);
    for (std::size_t j = 0; j < levels; ++j) {
        const std::size_t p = sys.pole_of_level(j);
        const double share = std::sqrt(static_cast<double>(table.level(j).multiplicity) /
                                       static_cast<double>(sys.multiplicity(p)));
        out.ground[j] = g[p] * share;
        out.excited[j] = e[p] * share;
    }
    return out;
}

Eigen::VectorXd expand_level_vector(const SpectrumTable& table, const std::vector<double>& coords) {
    if (table.qubits() > kMaxEnumerationQubits) throw CapacityError("vector too large to expand");
    if (coords.size() != table.distinct_count()) throw DimensionError("level coordinate count mismatch");
    Eigen::VectorXd out(static_cast<Eigen::Index>(table.dimension()));
    Eigen::Index z = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        const auto mult = table.level(j).multiplicity;
        const double amp = coords[j] / std::sqrt(static_cast<double>(mult));
        for (std::uint64_t k = 0; k < mult; ++k) out[z++] = amp;
    }
    return out;
}

QubitPair hamming_qubit_levels(double s) {
    const double r = std::sqrt(1.0 - 2.0 * s * (1.0 - s));
    return {(1.0 - r) / 2.0, (1.0 + r) / 2.0};
}

GapModel GapModel::uniform_projector(SpectrumTable table) {
    GapModel m(Kind::Secular, table.qubits());
    m.table_ = std::move(table);
    return m;
}

GapModel GapModel::marked_mirror(SpectrumTable table) {
    GapModel m(Kind::ReflectedSecular, table.qubits());
    m.table_ = std::move(table);
    return m;
}

GapModel GapModel::hamming(int n) {
    if (n < 1) throw ValidationError("n must be >= 1");
    return GapModel(Kind::HammingTensorSum, n);
}

GapModel GapModel::dense(const PathOperator& path) {
    if (path.dimension() > dense_capacity()) throw CapacityError("path too large for the dense gap model");
    GapModel m(Kind::Dense, path.qubits());
    m.path_ = std::make_shared<const PathOperator>(path.with_schedule(Schedule::linear()));
    return m;
}

GapModel GapModel::for_path(const PathOperator& path) {
    switch (path.family()) {
        case PathFamily::UniformProjector:
            return uniform_projector(path.cost_table());
        case PathFamily::MarkedMirror:
            return marked_mirror(path.cost_table());
        case PathFamily::HammingTensorSum:
            return hamming(path.qubits());
        case PathFamily::Generic:
            break;
    }
    return dense(path);
}

GapPoint GapModel::at(double s) const {
    switch (kind_) {
        case Kind::Secular:
            return gap_point(*table_, s);
        case Kind::ReflectedSecular: {
            auto p = gap_point(*table_, 1.0 - s);
            p.s = s;
            return p;
        }
        case Kind::HammingTensorSum: {
            const auto q = hamming_qubit_levels(s);
            GapPoint p;
            p.s = s;
            p.lambda1 = n_ * q.e0;
            p.lambda2 = (n_ - 1) * q.e0 + q.e1;
            p.gap = q.e1 - q.e0;
            p.degenerate = p.gap <= 0.0;
            return p;
        }
        case Kind::Dense: {
            const auto spec = dense_oracle(path_->materialize_dense(s));
            GapPoint p;
            p.s = s;
            p.lambda1 = spec.values[0];
            p.lambda2 = spec.values.size() > 1 ? spec.values[1] : spec.values[0];
            p.gap = std::max(0.0, p.lambda2 - p.lambda1);
            p.degenerate = p.gap <= 1e-12;
            return p;
        }
    }
    throw InternalInvariantError("unknown gap model kind");
}

std::string GapModel::description() const {
    switch (kind_) {
        case Kind::Secular: return "uniform-projector path, secular solver";
        case Kind::ReflectedSecular: return "Hadamard-mirrored marked-projector path, reflected secular solver";
        case Kind::HammingTensorSum: return "Hamming-weight path, single-qubit tensor-sum decomposition";
        case Kind::Dense: return "generic path, dense diagonalisation";
    }
    return "?";
}

namespace {

std::vector<double> uniform_points(int count) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = static_cast<double>(i) / (count - 1);
    return xs;
}

std::vector<double> crossing_window_points(const GapModel& model, int count) {
    if (count <= 0 || model.table() == nullptr || !model.table()->is_normalized()) return {};
    const auto& table = *model.table();
    const auto lines = crossing_lines(table, exponential_scale(table.qubits(), 100.0));
    if (!lines.defined || !(lines.s1 < lines.s2)) return {};
    double lo = lines.s1;
    double hi = lines.s2;
    if (model.kind() == GapModel::Kind::ReflectedSecular) {
        lo = 1.0 - lines.s2;
        hi = 1.0 - lines.s1;
    }
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * (i + 1.0) / (count + 1.0);
    return xs;
}

GapProfile sample_profile(const GapModel& model, const std::vector<double>& xs) {
    GapProfile profile;
    profile.samples.reserve(xs.size());
    for (double s : xs) {
        profile.samples.push_back(model.at(s));
        profile.degenerate_ground = profile.degenerate_ground || profile.samples.back().degenerate;
    }
    const auto best = std::min_element(profile.samples.begin(), profile.samples.end(),
                                       [](const GapPoint& a, const GapPoint& b) { return a.gap < b.gap; });
    profile.s_star = best->s;
    profile.g_min = best->gap;
    return profile;
}

}  // namespace

GapProfile gap_profile(const GapModel& model, int grid) {
    if (grid < 2) throw ValidationError("gap profile needs at least 2 points");
    return sample_profile(model, uniform_points(grid));
}

GapProfile min_gap(const GapModel& model, const MinGapOptions& options) {
    if (options.grid < 64) throw ValidationError("min_gap grid must have at least 64 points");
    if (!(options.tol > 0.0)) throw ValidationError("min_gap tolerance must be positive");
    const auto xs = merge_points(uniform_points(options.grid), crossing_window_points(model, options.window_points));
    auto profile = sample_profile(model, xs);

    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = profile.samples[i].gap;
    const auto best = refine_sampled_minimum([&](double s) { return model.at(s).gap; }, xs, ys, options.tol);
    if (best.value < profile.g_min) {
        const auto point = model.at(best.x);
        const auto pos = std::lower_bound(profile.samples.begin(), profile.samples.end(), best.x,
                                          [](const GapPoint& p, double s) { return p.s < s; });
        profile.samples.insert(pos, point);
        profile.s_star = best.x;
        profile.g_min = point.gap;
    }
    return profile;
}

GapProfile min_gap(const SpectrumTable& table, const MinGapOptions& options) {
    return min_gap(GapModel::uniform_projector(table), options);
}

PathGapMinimum path_min_gap(const GapModel& model, const Schedule& schedule, const MinGapOptions& options) {
    const auto linear = min_gap(model, options);
    if (schedule.is_linear()) return {linear.s_star, linear.s_star, 1.0, linear.g_min};

    auto path_gap = [&](double u) {
        const auto np = normalized_point(schedule, u);
        return np.scale * model.at(np.s).gap;
    };
    const auto xs = merge_points(uniform_points(options.grid), preimages(schedule, linear.s_star));
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = path_gap(xs[i]);
    const auto best = refine_sampled_minimum(path_gap, xs, ys, options.tol);
    const auto np = normalized_point(schedule, best.x);
    return {best.x, np.s, np.scale, best.value};
}

double exponential_scale(int n, double divisor) {
    return std::exp2(static_cast<double>(n) / 2.0 - static_cast<double>(n) / divisor);
}

CrossingLines crossing_lines(const SpectrumTable& table, double m, bool include_lowest) {
    if (!(m > 0.0)) throw ValidationError("crossing-line parameter m must be positive");
    const double inv_m = 1.0 / m;
    const double dim = static_cast<double>(table.dimension());
    double sum_minus = 0.0;
    double sum_plus = 0.0;
    for (std::size_t j = include_lowest ? 0 : 1; j < table.distinct_count(); ++j) {
        const auto& lv = table.level(j);
        const double below = lv.value - inv_m;
        const double above = lv.value + inv_m;
        if (below == 0.0 || above == 0.0) return {};
        sum_minus += static_cast<double>(lv.multiplicity) / below;
        sum_plus += static_cast<double>(lv.multiplicity) / above;
    }
    if (sum_minus == 0.0 || sum_plus == 0.0) return {};
    CrossingLines lines;
    lines.s2 = 1.0 / (1.0 + dim / sum_minus);
    lines.s1 = 1.0 / (1.0 + dim / sum_plus);
    lines.defined = std::isfinite(lines.s1) && std::isfinite(lines.s2) && lines.s1 > 0.0 && lines.s1 < 1.0 &&
                    lines.s2 > 0.0 && lines.s2 < 1.0;
    return lines;
}

CrossingReport crossing_points(const SpectrumTable& table, double m, const CrossingOptions& options) {
    if (!table.is_normalized()) throw ValidationError("crossing analysis needs a normalised table (minimum 0)");
    CrossingReport report;
    report.m = m;
    report.two_over_m = 2.0 / m;
    const auto lines = crossing_lines(table, m, options.include_lowest);
    report.defined = lines.defined;
    report.s1 = lines.s1;
    report.s2 = lines.s2;

    const auto global = min_gap(table, options.min_gap);
    report.g_min = global.g_min;
    report.s_star = global.s_star;

    if (!lines.defined) return report;
    report.ordered = lines.s1 < lines.s2;
    if (!report.ordered) return report;

    const double inv_m = 1.0 / m;
    const int count = options.window_samples;
    report.window_samples = count;
    report.sandwich_holds = count > 0;
    for (int i = 1; i <= count; ++i) {
        const double s = lines.s1 + (lines.s2 - lines.s1) * i / (count + 1.0);
        const auto p = gap_point(table, s);
        const double lower_line = 1.0 - (1.0 + inv_m) * s;
        const double upper_line = 1.0 - (1.0 - inv_m) * s;
        if (!(lower_line <= p.lambda1 && p.lambda2 <= upper_line)) report.sandwich_holds = false;
        report.window_gap_max = std::max(report.window_gap_max, p.gap);
    }
    report.bound_holds = report.sandwich_holds && report.window_gap_max < report.two_over_m;
    return report;
}

BoundReport bound_report(const GapModel& model, double divisor, const std::optional<Schedule>& schedule,
                         const MinGapOptions& options) {
    if (!(divisor >= 3.0)) throw ValidationError("exponent divisor must be >= 3");
    BoundReport r;
    r.n = model.qubits();
    r.divisor = divisor;
    r.exponent = r.n / 2.0 - r.n / divisor;
    r.bound = 2.0 / exponential_scale(r.n, divisor);
    const auto linear = min_gap(model, options);
    r.g_min = linear.g_min;
    r.s_star = linear.s_star;
    r.passed = r.g_min < r.bound;
    r.margin = r.bound - r.g_min;

    if (model.kind() == GapModel::Kind::HammingTensorSum) {
        r.family_note =
            "family mismatch: the initial Hamiltonian is the Hamming weight in the Hadamard basis, not the "
            "uniform projector complement, so the exponential gap bound does not apply to this instance";
    } else if (model.kind() == GapModel::Kind::Dense) {
        r.family_note = "family mismatch: generic path outside the uniform-projector and mirrored families";
    }

    if (schedule) {
        const auto pm = path_min_gap(model, *schedule, options);
        BoundReport::PathBound pb;
        pb.schedule = schedule->name();
        pb.c2 = schedule->c2();
        pb.bound = r.bound * schedule->c2();
        pb.g_min = pm.g_min;
        pb.u_star = pm.u_star;
        pb.passed = pm.g_min < pb.bound;
        pb.margin = pb.bound - pm.g_min;
        r.passed = r.passed && pb.passed;
        r.path = pb;
    }
    return r;
}

DenseSpectrum dense_oracle(const Eigen::MatrixXd& matrix, bool with_vectors) {
    if (matrix.rows() != matrix.cols()) throw DimensionError("dense oracle needs a square matrix");
    if (static_cast<std::uint64_t>(matrix.rows()) > dense_capacity()) {
        throw CapacityError("matrix dimension exceeds dense capacity");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        matrix, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InternalInvariantError("dense eigensolver failed");
    DenseSpectrum out;
    out.values = solver.eigenvalues();
    if (with_vectors) out.vectors = solver.eigenvectors();
    return out;
}

nlohmann::json to_json(const CrossingReport& r) {
    return {{"m", r.m},
            {"s1", r.s1},
            {"s2", r.s2},
            {"defined", r.defined},
            {"ordered", r.ordered},
            {"sandwich_holds", r.sandwich_holds},
            {"window_samples", r.window_samples},
            {"window_gap_max", r.window_gap_max},
            {"bound_holds", r.bound_holds},
            {"g_min", r.g_min},
            {"s_star", r.s_star},
            {"two_over_m", r.two_over_m}};
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j = {{"n", r.n},           {"divisor", r.divisor}, {"exponent", r.exponent},
                        {"bound", r.bound},   {"g_min", r.g_min},     {"s_star", r.s_star},
                        {"passed", r.passed}, {"margin", r.margin}};
    j["family_note"] = r.family_note ? nlohmann::json(*r.family_note) : nlohmann::json(nullptr);
    if (r.path) {
        j["path"] = {{"schedule", r.path->schedule}, {"c2", r.path->c2},         {"bound", r.path->bound},
                     {"g_min", r.path->g_min},       {"u_star", r.path->u_star}, {"passed", r.path->passed},
                     {"margin", r.path->margin}};
    }
    return j;
}

nlohmann::json to_json(const GapProfile& profile, bool include_samples) {
    nlohmann::json j = {{"s_star", profile.s_star},
                        {"g_min", profile.g_min},
                        {"degenerate_ground", profile.degenerate_ground},
                        {"sample_count", profile.samples.size()}};
    if (include_samples) {
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& p : profile.samples) {
            samples.push_back({{"s", p.s}, {"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"gap", p.gap}});
        }
        j["samples"] = samples;
    }
    return j;
}

}  // namespace qagap
