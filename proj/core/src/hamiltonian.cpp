#include "qagap/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <span>
#include <string>

#include "qagap/errors.hpp"
#include "qagap/walsh_hadamard.hpp"

namespace qagap {

namespace {

constexpr std::uint64_t kDefaultDenseCapacity = 4096;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dense_capacity(std::uint64_t dim) {
    if (dim > dense_capacity()) {
        throw CapacityError("dimension " + std::to_string(dim) + " exceeds dense capacity " +
                            std::to_string(dense_capacity()));
    }
}

void hadamard_in_place(StateVector& v) { walsh_hadamard(std::span<Complex>(v.data(), v.size())); }

bool is_hamming_layout(const SpectrumTable& table) {
    const int n = table.qubits();
    if (table.distinct_count() != static_cast<std::size_t>(n) + 1) return false;
    for (int w = 0; w <= n; ++w) {
        if (table.level(w).multiplicity != binomial(n, w)) return false;
    }
    return true;
}

bool is_plain_hamming_weight(const DiagonalCost& d) {
    if (d.assignment != Assignment::HammingWeight) return false;
    for (std::size_t w = 0; w < d.table.distinct_count(); ++w) {
        if (d.table.level(w).value != static_cast<double>(w)) return false;
    }
    return true;
}

// Calls visit(z, value) for every computational index in increasing order.
template <typename Visit>
void for_each_entry(const DiagonalCost& d, Visit&& visit) {
    const std::uint64_t dim = d.table.dimension();
    if (d.assignment == Assignment::HammingWeight) {
        for (std::uint64_t z = 0; z < dim; ++z) visit(z, d.table.level(__builtin_popcountll(z)).value);
        return;
    }
    std::uint64_t z = 0;
    for (const auto& lv : d.table.levels()) {
        for (std::uint64_t k = 0; k < lv.multiplicity; ++k, ++z) visit(z, lv.value);
    }
}

}  // namespace

std::uint64_t dense_capacity() {
    if (const char* env = std::getenv("QAGAP_DENSE_CAPACITY")) {
        std::uint64_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
    }
    return kDefaultDenseCapacity;
}

EndpointForm::EndpointForm(int n, Variant form) : n_(n), form_(std::move(form)) {
    if (n_ < 1 || n_ > kMaxTableQubits) throw ValidationError("endpoint qubit count out of range");
}

EndpointForm EndpointForm::uniform_projector(int n) { return EndpointForm(n, UniformProjectorComplement{}); }

EndpointForm EndpointForm::diagonal(SpectrumTable table, Basis basis, Assignment assignment) {
    if (assignment == Assignment::HammingWeight && !is_hamming_layout(table)) {
        throw ValidationError("Hamming-weight assignment needs n+1 levels with binomial multiplicities");
    }
    const int n = table.qubits();
    return EndpointForm(n, DiagonalCost{std::move(table), basis, assignment});
}

EndpointForm EndpointForm::marked_projector(int n, std::uint64_t marked) {
    if (n < 1 || n > kMaxTableQubits || marked >= (std::uint64_t{1} << n)) {
        throw ValidationError("marked index must lie in [0, 2^n)");
    }
    return EndpointForm(n, MarkedProjectorComplement{marked});
}

double EndpointForm::diagonal_entry(std::uint64_t z) const {
    const auto* d = as<DiagonalCost>();
    if (!d) throw ValidationError("diagonal_entry needs a diagonal endpoint");
    if (z >= dimension()) throw DimensionError("basis index out of range");
    if (d->assignment == Assignment::HammingWeight) return d->table.level(__builtin_popcountll(z)).value;
    std::uint64_t upto = 0;
    for (const auto& lv : d->table.levels()) {
        upto += lv.multiplicity;
        if (z < upto) return lv.value;
    }
    throw InternalInvariantError("multiplicities do not cover the basis");
}

std::vector<double> EndpointForm::diagonal_values() const {
    const auto* d = as<DiagonalCost>();
    if (n_ > kMaxEnumerationQubits) throw CapacityError("diagonal too large to enumerate");
    std::vector<double> out(dimension());
    for_each_entry(*d, [&](std::uint64_t z, double value) { out[z] = value; });
    return out;
}

void EndpointForm::accumulate(double weight, const StateVector& v, StateVector& out, StateVector& scratch) const {
    if (weight == 0.0) return;
    std::visit(Overloaded{
                   [&](const UniformProjectorComplement&) {
                       const Complex mean = v.sum() / static_cast<double>(dimension());
                       out.array() += weight * (v.array() - mean);
                   },
                   [&](const DiagonalCost& d) {
                       if (d.basis == Basis::Computational) {
                           for_each_entry(d, [&](std::uint64_t z, double value) {
                               out[static_cast<Eigen::Index>(z)] += weight * value * v[static_cast<Eigen::Index>(z)];
                           });
                           return;
                       }
                       scratch = v;
                       hadamard_in_place(scratch);
                       for_each_entry(d, [&](std::uint64_t z, double value) {
                           scratch[static_cast<Eigen::Index>(z)] *= value;
                       });
                       hadamard_in_place(scratch);
                       out += weight * scratch;
                   },
                   [&](const MarkedProjectorComplement& m) {
                       out += weight * v;
                       const auto x = static_cast<Eigen::Index>(m.marked);
                       out[x] -= weight * v[x];
                   },
               },
               form_);
}

double EndpointForm::norm_bound() const {
    if (const auto* d = as<DiagonalCost>()) return d->table.max_abs_value();
    return 1.0;
}

Eigen::MatrixXd EndpointForm::dense() const {
    check_dense_capacity(dimension());
    const auto dim = static_cast<Eigen::Index>(dimension());
    return std::visit(
        Overloaded{
            [&](const UniformProjectorComplement&) -> Eigen::MatrixXd {
                return Eigen::MatrixXd::Identity(dim, dim) -
                       Eigen::MatrixXd::Constant(dim, dim, 1.0 / static_cast<double>(dim));
            },
            [&](const DiagonalCost& d) -> Eigen::MatrixXd {
                const auto values = diagonal_values();
                Eigen::MatrixXd m = Eigen::Map<const Eigen::VectorXd>(values.data(), dim).asDiagonal();
                if (d.basis == Basis::Hadamard) {
                    for (Eigen::Index c = 0; c < dim; ++c) walsh_hadamard(std::span<double>(m.col(c).data(), dim));
                    m.transposeInPlace();
                    for (Eigen::Index c = 0; c < dim; ++c) walsh_hadamard(std::span<double>(m.col(c).data(), dim));
                }
                return m;
            },
            [&](const MarkedProjectorComplement& mp) -> Eigen::MatrixXd {
                Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
                m(static_cast<Eigen::Index>(mp.marked), static_cast<Eigen::Index>(mp.marked)) = 0.0;
                return m;
            },
        },
        form_);
}

StateVector EndpointForm::ground_state() const {
    const auto dim = static_cast<Eigen::Index>(dimension());
    return std::visit(Overloaded{
                          [&](const UniformProjectorComplement&) -> StateVector {
                              return StateVector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim))));
                          },
                          [&](const DiagonalCost& d) -> StateVector {
                              StateVector psi = StateVector::Zero(dim);
                              const double amp = 1.0 / std::sqrt(static_cast<double>(d.table.level(0).multiplicity));
                              const double lowest = d.table.min_value();
                              for_each_entry(d, [&](std::uint64_t z, double value) {
                                  if (value == lowest) psi[static_cast<Eigen::Index>(z)] = amp;
                              });
                              if (d.basis == Basis::Hadamard) hadamard_in_place(psi);
                              return psi;
                          },
                          [&](const MarkedProjectorComplement& m) -> StateVector {
                              StateVector psi = StateVector::Zero(dim);
                              psi[static_cast<Eigen::Index>(m.marked)] = 1.0;
                              return psi;
                          },
                      },
                      form_);
}

double EndpointForm::ground_probability(const StateVector& psi) const {
    if (static_cast<std::uint64_t>(psi.size()) != dimension()) throw DimensionError("state length mismatch");
    return std::visit(Overloaded{
                          [&](const UniformProjectorComplement&) -> double {
                              return std::norm(psi.sum()) / static_cast<double>(dimension());
                          },
                          [&](const DiagonalCost& d) -> double {
                              StateVector phi = psi;
                              if (d.basis == Basis::Hadamard) hadamard_in_place(phi);
                              const double lowest = d.table.min_value();
                              double p = 0.0;
                              for_each_entry(d, [&](std::uint64_t z, double value) {
                                  if (value == lowest) p += std::norm(phi[static_cast<Eigen::Index>(z)]);
                              });
                              return p;
                          },
                          [&](const MarkedProjectorComplement& m) -> double {
                              return std::norm(psi[static_cast<Eigen::Index>(m.marked)]);
                          },
                      },
                      form_);
}

PathOperator::PathOperator(EndpointForm h0, EndpointForm h1, Schedule schedule)
    : h0_(std::move(h0)), h1_(std::move(h1)), schedule_(std::move(schedule)), family_(PathFamily::Generic) {
    if (h0_.qubits() != h1_.qubits()) throw DimensionError("endpoint qubit counts differ");

    const auto* d0 = h0_.as<DiagonalCost>();
    const auto* d1 = h1_.as<DiagonalCost>();
    if (h0_.as<UniformProjectorComplement>() && d1 && d1->basis == Basis::Computational) {
        family_ = PathFamily::UniformProjector;
    } else if (d0 && d0->basis == Basis::Hadamard && h1_.as<MarkedProjectorComplement>()) {
        family_ = PathFamily::MarkedMirror;
    } else if (d0 && d1 && d0->basis == Basis::Hadamard && d1->basis == Basis::Computational &&
               is_plain_hamming_weight(*d0) && is_plain_hamming_weight(*d1)) {
        family_ = PathFamily::HammingTensorSum;
    }
}

const SpectrumTable& PathOperator::cost_table() const {
    switch (family_) {
        case PathFamily::UniformProjector:
        case PathFamily::HammingTensorSum:
            return h1_.as<DiagonalCost>()->table;
        case PathFamily::MarkedMirror:
            return h0_.as<DiagonalCost>()->table;
        case PathFamily::Generic:
            break;
    }
    throw ValidationError("generic paths have no single cost table");
}

void PathOperator::apply_weights(double wf, double wg, const StateVector& v, StateVector& out,
                                 StateVector& scratch) const {
    if (static_cast<std::uint64_t>(v.size()) != dimension()) {
        throw DimensionError("vector length " + std::to_string(v.size()) + " does not match dimension " +
                             std::to_string(dimension()));
    }
    out.setZero(v.size());
    h0_.accumulate(wf, v, out, scratch);
    h1_.accumulate(wg, v, out, scratch);
}

StateVector PathOperator::apply(double u, const StateVector& v) const {
    StateVector out;
    StateVector scratch;
    apply_weights(schedule_.initial_weight(u), schedule_.final_weight(u), v, out, scratch);
    return out;
}

Eigen::MatrixXd PathOperator::materialize_dense(double u) const {
    check_dense_capacity(dimension());
    const double f = schedule_.initial_weight(u);
    const double g = schedule_.final_weight(u);
    Eigen::MatrixXd m = f * h0_.dense() + g * h1_.dense();
    // Symmetrise away rounding from the Hadamard conjugation.
    return 0.5 * (m + m.transpose());
}

PathOperator PathOperator::with_schedule(Schedule schedule) const { return PathOperator(h0_, h1_, std::move(schedule)); }

PathOperator make_uniform_projector_path(const SpectrumTable& table, Schedule schedule) {
    return PathOperator(EndpointForm::uniform_projector(table.qubits()), EndpointForm::diagonal(table),
                        std::move(schedule));
}

PathOperator make_marked_mirror_path(const SpectrumTable& table, std::uint64_t marked, Schedule schedule) {
    return PathOperator(EndpointForm::diagonal(table, Basis::Hadamard),
                        EndpointForm::marked_projector(table.qubits(), marked), std::move(schedule));
}

PathOperator make_hamming_path(int n, Schedule schedule) {
    InstanceSpec spec;
    spec.kind = InstanceKind::HammingWeight;
    spec.n = n;
    spec.bound = std::max(kDefaultValueBound, static_cast<double>(n));
    const auto table = build_instance(spec);
    return PathOperator(EndpointForm::diagonal(table, Basis::Hadamard, Assignment::HammingWeight),
                        EndpointForm::diagonal(table, Basis::Computational, Assignment::HammingWeight),
                        std::move(schedule));
}

}  // namespace qagap
