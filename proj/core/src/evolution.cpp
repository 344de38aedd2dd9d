#include "qagap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>

#include "qagap/csv.hpp"
#include "qagap/errors.hpp"
#include "qagap/minimize.hpp"
#include "qagap/secular.hpp"
#include "qagap/walsh_hadamard.hpp"

namespace qagap {

namespace {

// Commutator-free fourth-order Magnus nodes and weights.
const double kNode1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kNode2 = 0.5 + std::sqrt(3.0) / 6.0;
const double kWeight1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kWeight2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

constexpr double kTaylorStepNorm = 0.5;
constexpr int kMaxTaylorTerms = 40;
constexpr int kClusterHalfWidth = 64;
constexpr double kClusterSpacing = 1.0 / 16.0;
constexpr int kEnergySamples = 257;

using Flag = TransitionElement::Flag;

std::vector<double> uniform_points(int count) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = static_cast<double>(i) / (count - 1);
    return xs;
}

const DiagonalCost& diagonal_of(const PathOperator& path) {
    const auto* d = path.final_form().as<DiagonalCost>();
    if (!d) d = path.initial_form().as<DiagonalCost>();
    return *d;
}

// |<E1| rate_projector (I - |alpha><alpha|) + rate_diagonal D |E0>| at linear point s.
TransitionElement uniform_family_element(const SpectrumTable& table, double s, double rate_projector,
                                         double rate_diagonal, double u) {
    GroundExcitedPair pair;
    try {
        pair = ground_excited_vectors(table, s);
    } catch (const DeflatedEigenvectorError&) {
        return {u, 0.0, gap_point(table, s).degenerate ? Flag::DegenerateGround : Flag::Deflated};
    }
    const double inv_dim = 1.0 / static_cast<double>(table.dimension());
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double diagonal = 0.0;
    for (std::size_t j = 0; j < table.distinct_count(); ++j) {
        const double w = std::sqrt(static_cast<double>(table.level(j).multiplicity) * inv_dim);
        alpha0 += w * pair.ground[j];
        alpha1 += w * pair.excited[j];
        diagonal += table.level(j).value * pair.excited[j] * pair.ground[j];
    }
    return {u, std::abs(-rate_projector * alpha1 * alpha0 + rate_diagonal * diagonal), Flag::None};
}

Eigen::Matrix2d qubit_matrix(double f, double g) {
    Eigen::Matrix2d m;
    m << 0.5 * f, -0.5 * f, -0.5 * f, 0.5 * f + g;
    return m;
}

Eigen::Vector2d qubit_ground(double f, double g) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
    es.computeDirect(qubit_matrix(f, g));
    return es.eigenvectors().col(0);
}

// Level index of computational index z under the endpoint's layout.
std::vector<std::size_t> level_index(const DiagonalCost& d) {
    const auto& table = d.table;
    std::vector<std::size_t> idx(table.dimension());
    if (d.assignment == Assignment::HammingWeight) {
        for (std::uint64_t z = 0; z < idx.size(); ++z) idx[z] = static_cast<std::size_t>(__builtin_popcountll(z));
        return idx;
    }
    std::size_t z = 0;
    for (std::size_t j = 0; j < table.distinct_count(); ++j) {
        for (std::uint64_t k = 0; k < table.level(j).multiplicity; ++k) idx[z++] = j;
    }
    return idx;
}

// |<G(s)|psi>|^2 with G the ground state of the uniform-projector path at s in (0, 1).
double uniform_family_ground_probability(const DiagonalCost& d, double s, const StateVector& psi) {
    const auto& table = d.table;
    const auto sys = RankOneSystem::linear(table, s);
    const auto ground = sys.root_vector(0, sys.root(0));
    const auto idx = level_index(d);
    std::vector<Complex> level_sum(table.distinct_count(), Complex{0.0, 0.0});
    for (std::size_t z = 0; z < idx.size(); ++z) level_sum[idx[z]] += psi[static_cast<Eigen::Index>(z)];
    Complex overlap{0.0, 0.0};
    for (std::size_t j = 0; j < table.distinct_count(); ++j) {
        const double mult = static_cast<double>(table.level(j).multiplicity);
        const std::size_t p = sys.pole_of_level(j);
        const double share = std::sqrt(mult / static_cast<double>(sys.multiplicity(p)));
        overlap += ground[p] * share * level_sum[j] / std::sqrt(mult);
    }
    return std::norm(overlap);
}

double dense_ground_probability(const PathOperator& path, double u, const StateVector& psi) {
    const auto spectrum = dense_oracle(path.materialize_dense(u), true);
    const double lowest = spectrum.values[0];
    const double tol = 1e-10 * std::max(1.0, spectrum.values.cwiseAbs().maxCoeff());
    double prob = 0.0;
    for (Eigen::Index k = 0; k < spectrum.values.size() && spectrum.values[k] <= lowest + tol; ++k) {
        prob += std::norm(spectrum.vectors.col(k).cast<Complex>().dot(psi));
    }
    return prob;
}

double max_energy(const PathOperator& path) {
    const double nb0 = path.initial_form().norm_bound();
    const double nb1 = path.final_form().norm_bound();
    double best = 0.0;
    for (double u : uniform_points(kEnergySamples)) {
        const auto& sch = path.schedule();
        best = std::max(best, std::abs(sch.initial_weight(u)) * nb0 + std::abs(sch.final_weight(u)) * nb1);
    }
    return best;
}

// psi <- exp(-i dt (wf H0 + wg H1)) psi by substepped Taylor series.
class Exponentiator {
public:
    explicit Exponentiator(const PathOperator& path)
        : path_(path),
          nb0_(path.initial_form().norm_bound()),
          nb1_(path.final_form().norm_bound()),
          term_(path.dimension()),
          next_(path.dimension()),
          scratch_(path.dimension()),
          sum_(path.dimension()) {}

    void apply(double wf, double wg, double dt, StateVector& psi) {
        const double reach = dt * (std::abs(wf) * nb0_ + std::abs(wg) * nb1_);
        if (reach == 0.0) return;
        const auto substeps = static_cast<std::int64_t>(std::ceil(reach / kTaylorStepNorm));
        const double h = dt / static_cast<double>(substeps);
        for (std::int64_t step = 0; step < substeps; ++step) {
            sum_ = psi;
            term_ = psi;
            for (int k = 1; k <= kMaxTaylorTerms; ++k) {
                path_.apply_weights(wf, wg, term_, next_, scratch_);
                term_ = next_ * Complex(0.0, -h / k);
                sum_ += term_;
                if (term_.norm() <= 1e-17 * sum_.norm()) break;
            }
            psi.swap(sum_);
        }
    }

private:
    const PathOperator& path_;
    double nb0_;
    double nb1_;
    StateVector term_;
    StateVector next_;
    StateVector scratch_;
    StateVector sum_;
};

struct Run {
    StateVector psi;
    double success;
    double drift;
    std::vector<TrajectorySample> trajectory;
};

Run integrate(const PathOperator& path, double total_time, std::int64_t steps, int samples) {
    const auto& sch = path.schedule();
    StateVector psi = path.initial_form().ground_state();
    Exponentiator expo(path);
    const double du = 1.0 / static_cast<double>(steps);
    const double dt = total_time * du;

    Run run;
    run.drift = 0.0;
    auto record = [&](std::int64_t step) {
        const double u = static_cast<double>(step) * du;
        const double norm = psi.norm();
        run.trajectory.push_back({u, instantaneous_ground_probability(path, u, psi), norm});
    };
    int next_sample = 0;
    auto sample_step = [&](int k) { return static_cast<std::int64_t>(std::llround(static_cast<double>(k) * steps / samples)); };
    if (samples > 0) {
        record(0);
        next_sample = 1;
    }

    for (std::int64_t step = 0; step < steps; ++step) {
        const double u0 = static_cast<double>(step) * du;
        const double ua = u0 + kNode1 * du;
        const double ub = u0 + kNode2 * du;
        const double fa = sch.initial_weight(ua);
        const double ga = sch.final_weight(ua);
        const double fb = sch.initial_weight(ub);
        const double gb = sch.final_weight(ub);
        expo.apply(kWeight2 * fa + kWeight1 * fb, kWeight2 * ga + kWeight1 * gb, dt, psi);
        expo.apply(kWeight1 * fa + kWeight2 * fb, kWeight1 * ga + kWeight2 * gb, dt, psi);
        run.drift = std::max(run.drift, std::abs(psi.norm() - 1.0));
        while (samples > 0 && next_sample <= samples && sample_step(next_sample) == step + 1) {
            record(step + 1);
            ++next_sample;
        }
    }
    run.success = std::clamp(path.final_form().ground_probability(psi), 0.0, 1.0);
    run.psi = std::move(psi);
    return run;
}

}  // namespace

TransitionElement dense_transition_element(const PathOperator& path, double u) {
    if (path.dimension() > dense_capacity()) throw CapacityError("path too large for dense eigenvectors");
    const auto& sch = path.schedule();
    const auto spectrum = dense_oracle(path.materialize_dense(u), true);
    const double scale = std::max(1.0, spectrum.values.cwiseAbs().maxCoeff());
    if (spectrum.values.size() < 2) throw DimensionError("transition element needs dimension >= 2");
    if (spectrum.values[1] - spectrum.values[0] <= 1e-12 * scale) return {u, 0.0, Flag::DegenerateGround};
    const Eigen::MatrixXd rate =
        sch.initial_rate(u) * path.initial_form().dense() + sch.final_rate(u) * path.final_form().dense();
    const double value = spectrum.vectors.col(1).dot(rate * spectrum.vectors.col(0));
    return {u, std::abs(value), Flag::None};
}

TransitionElement transition_element(const PathOperator& path, double u) {
    const auto& sch = path.schedule();
    switch (path.family()) {
        case PathFamily::UniformProjector: {
            const auto np = normalized_point(sch, u);
            return uniform_family_element(path.cost_table(), np.s, sch.initial_rate(u), sch.final_rate(u), u);
        }
        case PathFamily::MarkedMirror: {
            // Conjugation maps the path onto the uniform-projector path at 1 - s with the rates exchanged.
            const auto np = normalized_point(sch, u);
            return uniform_family_element(path.cost_table(), 1.0 - np.s, sch.final_rate(u), sch.initial_rate(u), u);
        }
        case PathFamily::HammingTensorSum: {
            // A single flipped qubit: the derivative couples the ground product state only to these.
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
            es.computeDirect(qubit_matrix(sch.initial_weight(u), sch.final_weight(u)));
            const Eigen::Matrix2d rate = qubit_matrix(sch.initial_rate(u), sch.final_rate(u));
            const double value = es.eigenvectors().col(1).dot(rate * es.eigenvectors().col(0));
            return {u, std::abs(value), Flag::None};
        }
        case PathFamily::Generic:
            break;
    }
    return dense_transition_element(path, u);
}

DmaxResult dmax(const PathOperator& path, double total_time, int grid) {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) throw ValidationError("dmax needs a finite T > 0");
    if (grid < 2) throw ValidationError("dmax grid needs at least 2 points");
    const auto& sch = path.schedule();

    auto us = uniform_points(grid);
    const auto minimum = path_min_gap(GapModel::for_path(path), sch);
    us = merge_points(std::move(us), {minimum.u_star});
    if (minimum.g_min > 0.0 && minimum.scale > 0.0) {
        const double spacing = kClusterSpacing * minimum.g_min / minimum.scale;
        std::vector<double> cluster;
        for (int k = -kClusterHalfWidth; k <= kClusterHalfWidth; ++k) {
            const double s = minimum.s_star + k * spacing;
            if (s <= 0.0 || s >= 1.0) continue;
            const auto pre = sch.is_linear() ? std::vector<double>{s} : preimages(sch, s);
            cluster.insert(cluster.end(), pre.begin(), pre.end());
        }
        us = merge_points(std::move(us), cluster);
    }

    DmaxResult result;
    std::vector<double> values(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        const auto e = transition_element(path, us[i]);
        if (e.flag != Flag::None) result.flagged.push_back(e);
        values[i] = e.value;
    }
    result.evaluated = us.size();

    const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    result.numerator = values[best];
    result.u_at_max = us[best];
    if (us.size() >= 2) {
        const double lo = us[best == 0 ? 0 : best - 1];
        const double hi = us[std::min(best + 1, us.size() - 1)];
        auto negated = [&](double u) {
            const auto e = transition_element(path, u);
            return e.flag == Flag::None ? -e.value : 0.0;
        };
        const auto refined = golden_section_minimize(negated, lo, hi, 1e-12);
        if (-refined.value > result.numerator) {
            result.numerator = -refined.value;
            result.u_at_max = refined.x;
        }
    }
    result.value = result.numerator / total_time;
    return result;
}

AdiabaticBudget required_time(const PathOperator& path, double epsilon, int grid) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    const auto minimum = path_min_gap(GapModel::for_path(path), path.schedule());
    const auto d = dmax(path, 1.0, grid);

    AdiabaticBudget budget;
    budget.numerator = d.numerator;
    budget.g_min = minimum.g_min;
    budget.u_star = minimum.u_star;
    budget.epsilon = epsilon;
    if (minimum.g_min <= 0.0) {
        budget.unbounded = true;
        budget.t_required = std::numeric_limits<double>::infinity();
        budget.d_max = 0.0;
        return budget;
    }
    budget.t_required = d.numerator / (epsilon * minimum.g_min * minimum.g_min);
    budget.d_max = budget.t_required > 0.0 ? d.numerator / budget.t_required : 0.0;
    return budget;
}

std::int64_t default_steps(const PathOperator& path, double total_time) {
    const double want = std::ceil(50.0 * total_time * max_energy(path));
    if (!(want < 1e12)) throw ValidationError("T too large for the default step count");
    return std::max<std::int64_t>(1000, static_cast<std::int64_t>(want));
}

double instantaneous_ground_probability(const PathOperator& path, double u, const StateVector& psi) {
    if (static_cast<std::uint64_t>(psi.size()) != path.dimension()) throw DimensionError("state length mismatch");
    const auto& sch = path.schedule();
    if (sch.final_weight(u) == 0.0) return path.initial_form().ground_probability(psi);
    if (sch.initial_weight(u) == 0.0) return path.final_form().ground_probability(psi);
    const auto np = normalized_point(sch, u);
    const bool interior = np.s > 0.0 && np.s < 1.0;

    switch (path.family()) {
        case PathFamily::UniformProjector:
            if (interior) return uniform_family_ground_probability(diagonal_of(path), np.s, psi);
            break;
        case PathFamily::MarkedMirror:
            if (interior) {
                // Ground state is W S G(1 - s) with S = diag((-1)^{x.z}).
                const auto x = path.final_form().as<MarkedProjectorComplement>()->marked;
                StateVector phi = psi;
                walsh_hadamard(std::span<Complex>(phi.data(), static_cast<std::size_t>(phi.size())));
                for (Eigen::Index z = 0; z < phi.size(); ++z) {
                    if (__builtin_popcountll(x & static_cast<std::uint64_t>(z)) % 2 == 1) phi[z] = -phi[z];
                }
                return uniform_family_ground_probability(diagonal_of(path), 1.0 - np.s, phi);
            }
            break;
        case PathFamily::HammingTensorSum: {
            const auto q = qubit_ground(sch.initial_weight(u), sch.final_weight(u));
            Complex overlap{0.0, 0.0};
            for (Eigen::Index z = 0; z < psi.size(); ++z) {
                double amp = 1.0;
                for (int b = 0; b < path.qubits(); ++b) amp *= q[(z >> b) & 1];
                overlap += amp * psi[z];
            }
            return std::norm(overlap);
        }
        case PathFamily::Generic:
            break;
    }
    return dense_ground_probability(path, u, psi);
}

EvolutionResult evolve(const PathOperator& path, double total_time, const EvolveOptions& options) {
    if (path.qubits() > kMaxEvolutionQubits) throw CapacityError("evolution supports n <= 14");
    if (!(total_time >= 0.0) || !std::isfinite(total_time)) throw ValidationError("T must be finite and >= 0");
    if (options.trajectory_samples < 0) throw ValidationError("trajectory sample count must be >= 0");

    EvolutionResult result;
    result.total_time = total_time;
    if (total_time == 0.0) {
        result.final_state = path.initial_form().ground_state();
        result.success_probability = std::clamp(path.final_form().ground_probability(result.final_state), 0.0, 1.0);
        result.norm_drift = std::abs(result.final_state.norm() - 1.0);
        if (options.trajectory_samples > 0) {
            const double norm = result.final_state.norm();
            result.trajectory.push_back({0.0, path.initial_form().ground_probability(result.final_state), norm});
            result.trajectory.push_back({1.0, result.success_probability, norm});
        }
        return result;
    }

    std::int64_t steps = options.steps.value_or(default_steps(path, total_time));
    if (steps < 2) throw ValidationError("evolution needs at least 2 steps");

    auto checked = [&](std::int64_t count) {
        auto run = integrate(path, total_time, count, options.trajectory_samples);
        if (run.drift > options.norm_tolerance) {
            throw IntegrationError("norm drift " + format_double(run.drift) + " exceeds " +
                                   format_double(options.norm_tolerance) + " with " + std::to_string(count) +
                                   " steps at T = " + format_double(total_time));
        }
        return run;
    };

    Run run = checked(steps);
    if (options.step_doubling) {
        result.converged = false;
        for (int d = 0; d < options.max_doublings; ++d) {
            steps *= 2;
            Run finer = checked(steps);
            const double delta = std::abs(finer.success - run.success);
            run = std::move(finer);
            result.doubling_delta = delta;
            if (delta <= options.doubling_tolerance) {
                result.converged = true;
                break;
            }
        }
    }
    result.final_state = std::move(run.psi);
    result.success_probability = run.success;
    result.norm_drift = run.drift;
    result.steps = steps;
    result.trajectory = std::move(run.trajectory);
    return result;
}

PathOperator instance_path(const InstanceSpec& spec, const Schedule& schedule) {
    if (spec.kind == InstanceKind::HammingWeight) return make_hamming_path(spec.n, schedule);
    return make_uniform_projector_path(build_instance(spec), schedule);
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionError("slope fit needs equally many x and y values");
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx == 0.0 ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
}

ScalingTable runtime_scaling_experiment(const InstanceSpec& base, int n_first, int n_last, double epsilon,
                                        const Schedule& schedule, int grid) {
    if (n_first < 1 || n_last < n_first) throw ValidationError("n range must satisfy 1 <= first <= last");
    ScalingTable table{base.kind, epsilon, {}, std::numeric_limits<double>::quiet_NaN()};
    std::vector<double> xs;
    std::vector<double> ys;
    for (int n = n_first; n <= n_last; ++n) {
        InstanceSpec spec = base;
        spec.n = n;
        const auto budget = required_time(instance_path(spec, schedule), epsilon, grid);
        table.rows.push_back({n, budget.g_min, budget.numerator, budget.t_required});
        if (std::isfinite(budget.t_required) && budget.t_required > 0.0) {
            xs.push_back(n);
            ys.push_back(std::log2(budget.t_required));
        }
    }
    table.slope = least_squares_slope(xs, ys);
    return table;
}

std::vector<SweepRow> run_sweep(const InstanceSpec& base, int n_first, int n_last, const Schedule& schedule,
                                const SweepOptions& options) {
    if (n_first < 1 || n_last < n_first) throw ValidationError("n range must satisfy 1 <= first <= last");
    std::vector<SweepRow> rows;
    for (int n = n_first; n <= n_last; ++n) {
        InstanceSpec spec = base;
        spec.n = n;
        const auto path = instance_path(spec, schedule);
        const auto budget = required_time(path, options.epsilon, options.grid);
        if (options.time_multipliers.empty()) {
            rows.push_back({n, budget.g_min, budget.t_required, std::nullopt, std::nullopt, std::nullopt});
            continue;
        }
        for (double multiplier : options.time_multipliers) {
            const double t = multiplier * budget.t_required;
            const auto result = evolve(path, t, options.evolve);
            rows.push_back({n, budget.g_min, budget.t_required, result.success_probability, t, result.steps});
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    CsvWriter csv(out, {"n", "g_min", "t_required", "success_probability", "T", "steps"});
    for (const auto& r : rows) {
        csv.field(static_cast<long long>(r.n)).field(r.g_min).field(r.t_required);
        r.success_probability ? csv.field(*r.success_probability) : csv.blank();
        r.total_time ? csv.field(*r.total_time) : csv.blank();
        r.steps ? csv.field(static_cast<long long>(*r.steps)) : csv.blank();
        csv.end_row();
    }
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory) {
    CsvWriter csv(out, {"u", "overlap2", "norm"});
    for (const auto& t : trajectory) {
        csv.field(t.u).field(t.overlap2).field(t.norm);
        csv.end_row();
    }
}

namespace {

const char* flag_name(Flag flag) {
    switch (flag) {
        case Flag::None:
            return "none";
        case Flag::DegenerateGround:
            return "degenerate_ground";
        case Flag::Deflated:
            return "deflated";
    }
    return "none";
}

nlohmann::json finite_or_null(double value) {
    return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const DmaxResult& result) {
    nlohmann::json flagged = nlohmann::json::array();
    for (const auto& e : result.flagged) flagged.push_back({{"u", e.u}, {"flag", flag_name(e.flag)}});
    return {{"d_max", result.value},
            {"numerator", result.numerator},
            {"u_at_max", result.u_at_max},
            {"evaluated", result.evaluated},
            {"flagged", flagged}};
}

nlohmann::json to_json(const AdiabaticBudget& budget) {
    return {{"d_max", budget.d_max},
            {"numerator", budget.numerator},
            {"g_min", budget.g_min},
            {"u_star", budget.u_star},
            {"epsilon", budget.epsilon},
            {"t_required", finite_or_null(budget.t_required)},
            {"unbounded", budget.unbounded}};
}

nlohmann::json to_json(const EvolutionResult& result, bool include_trajectory) {
    nlohmann::json j = {{"success_probability", result.success_probability},
                        {"T", result.total_time},
                        {"steps", result.steps},
                        {"norm_drift", result.norm_drift},
                        {"doubling_delta", result.doubling_delta ? nlohmann::json(*result.doubling_delta)
                                                                 : nlohmann::json(nullptr)},
                        {"converged", result.converged}};
    if (include_trajectory) {
        nlohmann::json traj = nlohmann::json::array();
        for (const auto& t : result.trajectory) traj.push_back({{"u", t.u}, {"overlap2", t.overlap2}, {"norm", t.norm}});
        j["trajectory"] = traj;
    }
    return j;
}

nlohmann::json to_json(const ScalingTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"n", r.n},
                        {"g_min", r.g_min},
                        {"numerator", r.numerator},
                        {"t_required", finite_or_null(r.t_required)}});
    }
    return {{"kind", to_string(table.kind)},
            {"epsilon", table.epsilon},
            {"slope", finite_or_null(table.slope)},
            {"rows", rows}};
}

}  // namespace qagap
