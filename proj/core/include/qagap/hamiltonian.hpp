#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qagap/objective.hpp"
#include "qagap/schedule.hpp"

namespace qagap {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Largest dimension that may be materialised densely. Reads the
/// QAGAP_DENSE_CAPACITY environment variable, default 4096.
std::uint64_t dense_capacity();

/// I - |alpha><alpha| with |alpha> the uniform superposition.
struct UniformProjectorComplement {};

enum class Basis { Computational, Hadamard };

/// How the levels of a SpectrumTable are laid out over basis indices.
enum class Assignment {
    /// Levels fill indices 0, 1, 2, ... in ascending value order.
    Ascending,
    /// Index z carries level number popcount(z); requires level w to have
    /// multiplicity C(n, w).
    HammingWeight,
};

/// sum_z f(z) |z><z| in the computational basis, or the same diagonal
/// conjugated by the n-fold Hadamard transform.
struct DiagonalCost {
    SpectrumTable table;
    Basis basis = Basis::Computational;
    Assignment assignment = Assignment::Ascending;
};

/// I - |x><x|.
struct MarkedProjectorComplement {
    std::uint64_t marked = 0;
};

/// One end of an interpolation path.
class EndpointForm {
public:
    using Variant = std::variant<UniformProjectorComplement, DiagonalCost, MarkedProjectorComplement>;

    static EndpointForm uniform_projector(int n);
    static EndpointForm diagonal(SpectrumTable table, Basis basis = Basis::Computational,
                                 Assignment assignment = Assignment::Ascending);
    static EndpointForm marked_projector(int n, std::uint64_t marked);

    int qubits() const { return n_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
    const Variant& form() const { return form_; }

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&form_);
    }

    /// Cost value placed on computational index z (DiagonalCost only).
    double diagonal_entry(std::uint64_t z) const;

    /// out += weight * H v, O(2^n) or O(n 2^n) for Hadamard-basis diagonals.
    void accumulate(double weight, const StateVector& v, StateVector& out, StateVector& scratch) const;

    /// Upper bound on the spectral norm.
    double norm_bound() const;

    Eigen::MatrixXd dense() const;

    /// A normalised ground state (uniform over the ground eigenspace's
    /// distinguished basis when the ground level is degenerate).
    StateVector ground_state() const;

    /// Squared norm of the projection of psi onto the full ground eigenspace.
    double ground_probability(const StateVector& psi) const;

private:
    EndpointForm(int n, Variant form);
    std::vector<double> diagonal_values() const;

    int n_;
    Variant form_;
};

/// Which closed-form spectral machinery applies to a path.
enum class PathFamily {
    /// H0 = I - |alpha><alpha|, H1 diagonal in the computational basis.
    UniformProjector,
    /// H0 diagonal in the Hadamard basis, H1 = I - |x><x|.
    MarkedMirror,
    /// H0, H1 the Hamming weight in the Hadamard and computational bases.
    HammingTensorSum,
    Generic,
};

/// H(u) = f(u) H0 + g(u) H1.
class PathOperator {
public:
    PathOperator(EndpointForm h0, EndpointForm h1, Schedule schedule);

    const EndpointForm& initial_form() const { return h0_; }
    const EndpointForm& final_form() const { return h1_; }
    const Schedule& schedule() const { return schedule_; }
    PathFamily family() const { return family_; }
    int qubits() const { return h0_.qubits(); }
    std::uint64_t dimension() const { return h0_.dimension(); }

    /// The cost table of the diagonal endpoint for the structured families.
    const SpectrumTable& cost_table() const;

    /// H(u) v without materialising H.
    StateVector apply(double u, const StateVector& v) const;

    /// (wf H0 + wg H1) v written into out; scratch is reused between calls.
    void apply_weights(double wf, double wg, const StateVector& v, StateVector& out, StateVector& scratch) const;

    Eigen::MatrixXd materialize_dense(double u) const;

    PathOperator with_schedule(Schedule schedule) const;

private:
    EndpointForm h0_;
    EndpointForm h1_;
    Schedule schedule_;
    PathFamily family_;
};

/// Uniform projector complement to the computational-basis diagonal cost.
PathOperator make_uniform_projector_path(const SpectrumTable& table, Schedule schedule = Schedule::linear());

/// Hadamard-mirrored path: Hadamard-basis cost to I - |x><x|.
PathOperator make_marked_mirror_path(const SpectrumTable& table, std::uint64_t marked,
                                     Schedule schedule = Schedule::linear());

/// Structured positive control: Hamming weight in both bases.
PathOperator make_hamming_path(int n, Schedule schedule = Schedule::linear());

/// Free-function spelling of PathOperator::apply.
inline StateVector apply(const PathOperator& path, double u, const StateVector& v) { return path.apply(u, v); }

/// Free-function spelling of PathOperator::materialize_dense.
inline Eigen::MatrixXd materialize_dense(const PathOperator& path, double u) { return path.materialize_dense(u); }

}  // namespace qagap
