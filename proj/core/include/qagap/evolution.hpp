#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "qagap/hamiltonian.hpp"
#include "qagap/objective.hpp"
#include "qagap/spectral.hpp"

namespace qagap {

/// Evolution stores full state vectors: n <= 14 (16384 amplitudes).
inline constexpr int kMaxEvolutionQubits = 14;

// ---------------------------------------------------------------------------
// Transition matrix element and the adiabatic budget.
// ---------------------------------------------------------------------------

/// |<E1(u)| f'(u) H0 + g'(u) H1 |E0(u)>|, the T-independent part of the
/// instantaneous transition element (dH/dt = dH/du / T).
struct TransitionElement {
    enum class Flag {
        None,
        /// lambda1 == lambda2: the lowest pair is not separated.
        DegenerateGround,
        /// One state of the pair lies in a deflated eigenspace, orthogonal to
        /// the invariant subspace holding the other; the element is 0.
        Deflated,
    };

    double u = 0.0;
    double value = 0.0;
    Flag flag = Flag::None;
};

/// Structured closed form for the uniform-projector, mirror and Hamming
/// families; dense eigenvectors for generic paths.
TransitionElement transition_element(const PathOperator& path, double u);

/// Same quantity from dense eigenvectors of the materialised path.
TransitionElement dense_transition_element(const PathOperator& path, double u);

struct DmaxResult {
    /// numerator / T.
    double value = 0.0;
    /// max_u |<E1| f' H0 + g' H1 |E0>|.
    double numerator = 0.0;
    double u_at_max = 0.0;
    std::size_t evaluated = 0;
    /// Grid points where the lowest pair is degenerate or partly deflated.
    std::vector<TransitionElement> flagged;
};

/// Maximum of the transition element over a uniform u grid, densified around
/// the minimum-gap point, then refined by golden section. T must be > 0.
DmaxResult dmax(const PathOperator& path, double total_time, int grid = 1024);

struct AdiabaticBudget {
    double d_max = 0.0;
    double numerator = 0.0;
    double g_min = 0.0;
    double u_star = 0.0;
    double epsilon = 0.0;
    /// numerator / (epsilon * g_min^2); +inf when g_min == 0.
    double t_required = 0.0;
    bool unbounded = false;
};

/// Smallest T with d_max(T) / g_min^2 <= epsilon. Requires 0 < epsilon < 1.
AdiabaticBudget required_time(const PathOperator& path, double epsilon, int grid = 1024);

// ---------------------------------------------------------------------------
// Schroedinger evolution.
// ---------------------------------------------------------------------------

struct TrajectorySample {
    double u;
    /// Probability mass on the instantaneous ground eigenspace.
    double overlap2;
    double norm;
};

struct EvolveOptions {
    /// Default max(1000, ceil(50 T max_u ||H(u)||)).
    std::optional<std::int64_t> steps;
    /// Number of trajectory intervals; 0 records no trajectory.
    int trajectory_samples = 0;
    /// Re-run with doubled steps until the success probability moves by at most doubling_tolerance.
    bool step_doubling = true;
    double doubling_tolerance = 1e-6;
    int max_doublings = 4;
    /// Total |norm - 1| allowed before IntegrationError.
    double norm_tolerance = 1e-8;
};

struct EvolutionResult {
    StateVector final_state;
    double success_probability = 0.0;
    double total_time = 0.0;
    std::int64_t steps = 0;
    /// max |norm - 1| over the run.
    double norm_drift = 0.0;
    /// |P(steps) - P(steps/2)|; absent when no doubling check ran.
    std::optional<double> doubling_delta;
    bool converged = true;
    std::vector<TrajectorySample> trajectory;
};

/// Integrates i d/dt psi = H(t/T) psi from the ground state of H0 with a
/// fourth-order commutator-free Magnus scheme. Success probability is the mass
/// on the ground eigenspace of H1. T = 0 is an instantaneous quench.
EvolutionResult evolve(const PathOperator& path, double total_time, const EvolveOptions& options = {});

/// max(1000, ceil(50 T max_u ||H(u)||)).
std::int64_t default_steps(const PathOperator& path, double total_time);

/// Probability mass of psi on the ground eigenspace of H(u).
double instantaneous_ground_probability(const PathOperator& path, double u, const StateVector& psi);

// ---------------------------------------------------------------------------
// Runtime scaling and sweeps.
// ---------------------------------------------------------------------------

struct ScalingRow {
    int n;
    double g_min;
    double numerator;
    double t_required;
};

struct ScalingTable {
    InstanceKind kind;
    double epsilon;
    std::vector<ScalingRow> rows;
    /// Least-squares slope of log2(t_required) against n; NaN for fewer than 2 finite rows.
    double slope;
};

/// Path used for an instance kind: the Hamming tensor sum for HammingWeight,
/// the uniform-projector path otherwise.
PathOperator instance_path(const InstanceSpec& spec, const Schedule& schedule = Schedule::linear());

ScalingTable runtime_scaling_experiment(const InstanceSpec& base, int n_first, int n_last, double epsilon,
                                        const Schedule& schedule = Schedule::linear(), int grid = 1024);

/// Least-squares slope of ys against xs.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepRow {
    int n;
    double g_min;
    double t_required;
    std::optional<double> success_probability;
    std::optional<double> total_time;
    std::optional<std::int64_t> steps;
};

struct SweepOptions {
    double epsilon = 0.1;
    int grid = 1024;
    /// Evolve each cell at T = multiplier * t_required for every multiplier.
    std::vector<double> time_multipliers;
    EvolveOptions evolve{};
};

std::vector<SweepRow> run_sweep(const InstanceSpec& base, int n_first, int n_last, const Schedule& schedule,
                                const SweepOptions& options);

/// Header n,g_min,t_required,success_probability,T,steps; absent fields are empty.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// Header u,overlap2,norm.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory);

nlohmann::json to_json(const DmaxResult& result);
nlohmann::json to_json(const AdiabaticBudget& budget);
nlohmann::json to_json(const EvolutionResult& result, bool include_trajectory);
nlohmann::json to_json(const ScalingTable& table);

}  // namespace qagap
