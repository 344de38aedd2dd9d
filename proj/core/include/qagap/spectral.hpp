#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qagap/hamiltonian.hpp"
#include "qagap/objective.hpp"
#include "qagap/schedule.hpp"
#include "qagap/secular.hpp"

namespace qagap {

// ---------------------------------------------------------------------------
// Characteristic polynomial and eigenvalues of the uniform-projector path
//   H(s) = (1-s)(I - |alpha><alpha|) + s sum_z a(z)|z><z|.
// ---------------------------------------------------------------------------

/// sign * exp(log_abs); a zero value has sign 0.
struct SignedLog {
    double log_abs;
    int sign;

    double value() const;
};

/// A(lambda) = prod_i (1-s-lambda+s a_i) - ((1-s)/N) sum_j prod_{k!=j} (1-s-lambda+s a_k),
/// evaluated with multiplicity-aware products in log space.
SignedLog char_poly_log(const SpectrumTable& table, double s, double lambda);
double char_poly_eval(const SpectrumTable& table, double s, double lambda);

/// The k smallest eigenvalues of H(s), with multiplicity.
std::vector<double> lowest_eigenvalues(const SpectrumTable& table, double s, std::uint64_t k);

/// The complete spectrum of H(s) as ascending runs.
std::vector<EigenRun> full_spectrum(const SpectrumTable& table, double s);

/// All N eigenvalues of H(s), ascending (capacity guarded by enumeration limit).
std::vector<double> expanded_spectrum(const SpectrumTable& table, double s);

struct GapPoint {
    double s = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;
    /// lambda1 == lambda2: the ground level is degenerate at this point.
    bool degenerate = false;
};

GapPoint gap_point(const SpectrumTable& table, double s);

/// lambda2(s) - lambda1(s); zero signals a degenerate ground level.
double gap(const SpectrumTable& table, double s);

/// Closed-form eigenvectors of the two lowest states, in level coordinates:
/// entry j is the amplitude on the normalised uniform vector over level j.
struct GroundExcitedPair {
    double lambda1;
    double lambda2;
    std::vector<double> ground;
    std::vector<double> excited;
};

/// Throws DeflatedEigenvectorError when lambda2 (or lambda1) is a deflated eigenvalue.
GroundExcitedPair ground_excited_vectors(const SpectrumTable& table, double s);

/// Expands level coordinates to a full 2^n vector (ascending level layout).
Eigen::VectorXd expand_level_vector(const SpectrumTable& table, const std::vector<double>& coords);

// ---------------------------------------------------------------------------
// Gap models: the lowest pair of (1-s) H0 + s H1 for each supported family.
// ---------------------------------------------------------------------------

class GapModel {
public:
    enum class Kind { Secular, ReflectedSecular, HammingTensorSum, Dense };

    static GapModel uniform_projector(SpectrumTable table);
    /// Hadamard-mirrored family: its spectrum at s equals the uniform-projector
    /// spectrum at 1 - s.
    static GapModel marked_mirror(SpectrumTable table);
    static GapModel hamming(int n);
    /// Dense diagonalisation of the path's endpoints (any family, small n).
    static GapModel dense(const PathOperator& path);
    /// Structured model for the path's family, dense for generic paths.
    static GapModel for_path(const PathOperator& path);

    Kind kind() const { return kind_; }
    int qubits() const { return n_; }
    /// Cost table for the secular kinds; nullptr otherwise.
    const SpectrumTable* table() const { return table_ ? &*table_ : nullptr; }

    GapPoint at(double s) const;

    std::string description() const;

private:
    GapModel(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    std::optional<SpectrumTable> table_;
    std::shared_ptr<const PathOperator> path_;
};

/// Single-qubit factor of the Hamming tensor sum at s: eigenvalues of
/// (1-s)|-><-| + s|1><1|. The n-qubit gap equals e1 - e0 for every n.
struct QubitPair {
    double e0;
    double e1;
};
QubitPair hamming_qubit_levels(double s);

// ---------------------------------------------------------------------------
// Minimum gap search.
// ---------------------------------------------------------------------------

struct GapProfile {
    std::vector<GapPoint> samples;
    double s_star = 0.0;
    double g_min = 0.0;
    /// The ground level is degenerate at some sample (gap closes exactly).
    bool degenerate_ground = false;
};

struct MinGapOptions {
    int grid = 1024;
    double tol = 1e-9;
    /// Extra uniform points placed inside the crossing window when it exists.
    int window_points = 4096;
};

/// Samples the gap at `grid` uniform points of [0,1].
GapProfile gap_profile(const GapModel& model, int grid);

/// Coarse uniform scan, densified inside the crossing window, then golden
/// section around every sampled local minimum.
GapProfile min_gap(const GapModel& model, const MinGapOptions& options = {});
GapProfile min_gap(const SpectrumTable& table, const MinGapOptions& options = {});

/// Minimum over u of the gap of f(u) H0 + g(u) H1, found as
/// scale(u) * gap(s(u)) on a u grid plus the preimages of the linear minimiser.
struct PathGapMinimum {
    double u_star;
    double s_star;
    double scale;
    double g_min;
};
PathGapMinimum path_min_gap(const GapModel& model, const Schedule& schedule, const MinGapOptions& options = {});

// ---------------------------------------------------------------------------
// Crossing lines 1 - (1 -/+ 1/m) s and the gap bound.
// ---------------------------------------------------------------------------

/// 2^(n/2 - n/divisor).
double exponential_scale(int n, double divisor);

struct CrossingLines {
    bool defined = false;
    double s1 = 0.0;
    double s2 = 0.0;
};

/// s2 = 1 / (1 + N / sum_j mu_j/(a_j - 1/m)), s1 likewise with a_j + 1/m.
/// The j = 1 term is included unless include_lowest is false.
CrossingLines crossing_lines(const SpectrumTable& table, double m, bool include_lowest = true);

struct CrossingReport {
    double m = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    bool defined = false;
    bool ordered = false;
    /// Both lowest eigenvalues stayed between the two lines on every window sample.
    bool sandwich_holds = false;
    int window_samples = 0;
    double window_gap_max = 0.0;
    double g_min = 0.0;
    double s_star = 0.0;
    double two_over_m = 0.0;
    bool bound_holds = false;
};

struct CrossingOptions {
    bool include_lowest = true;
    int window_samples = 10000;
    MinGapOptions min_gap{};
};

/// Requires a normalised table (smallest value 0).
CrossingReport crossing_points(const SpectrumTable& table, double m, const CrossingOptions& options = {});

struct BoundReport {
    int n = 0;
    double divisor = 100.0;
    double exponent = 0.0;
    double bound = 0.0;
    double g_min = 0.0;
    double s_star = 0.0;
    bool passed = false;
    double margin = 0.0;
    /// Set when the Hamiltonian family is not the uniform-projector family the bound is stated for.
    std::optional<std::string> family_note;

    struct PathBound {
        std::string schedule;
        double c2;
        double bound;
        double g_min;
        double u_star;
        bool passed;
        double margin;
    };
    std::optional<PathBound> path;
};

/// Checks g_min < 2 / 2^(n/2 - n/divisor) and, with a schedule, the path
/// minimum against 2 c2 / 2^(n/2 - n/divisor). divisor must be >= 3.
BoundReport bound_report(const GapModel& model, double divisor = 100.0,
                         const std::optional<Schedule>& schedule = std::nullopt, const MinGapOptions& options = {});

// ---------------------------------------------------------------------------
// Dense reference eigensolver.
// ---------------------------------------------------------------------------

struct DenseSpectrum {
    Eigen::VectorXd values;
    /// Columns are eigenvectors; empty unless requested.
    Eigen::MatrixXd vectors;
};

DenseSpectrum dense_oracle(const Eigen::MatrixXd& matrix, bool with_vectors = false);

// ---------------------------------------------------------------------------
// Serialisation.
// ---------------------------------------------------------------------------

nlohmann::json to_json(const CrossingReport& report);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const GapProfile& profile, bool include_samples);

}  // namespace qagap
