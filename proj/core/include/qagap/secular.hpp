#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qagap/objective.hpp"

namespace qagap {

/// A run of equal eigenvalues in an ascending spectrum.
struct EigenRun {
    double value;
    std::uint64_t multiplicity;
    /// Pinned to a repeated diagonal entry (orthogonal to the uniform vector).
    bool deflated;
};

/// Eigenproblem of diag(d) - rho |alpha><alpha|, where the diagonal repeats
/// pole d_j exactly mu_j times and |alpha> is uniform over N = sum mu_j states.
///
/// Each distinct pole with multiplicity mu_j contributes mu_j - 1 deflated
/// eigenvalues equal to d_j; the remaining K eigenvalues are the roots of
///
///     1 - rho * sum_j (mu_j / N) / (d_j - lambda) = 0,
///
/// one per interlacing bracket. For rho > 0 the brackets are (d_1 - rho, d_1)
/// and (d_k, d_{k+1}); for rho < 0 they are (d_k, d_{k+1}) and
/// (d_K, d_K + |rho|). Every evaluation is O(K), independent of N.
class RankOneSystem {
public:
    struct Bracket {
        double lo;
        double hi;
    };

    /// f (I - |alpha><alpha|) + g sum_z a(z)|z><z| for the table's values.
    static RankOneSystem weighted(const SpectrumTable& table, double f, double g);

    /// The linear interpolation point (1-s) H0 + s H1.
    static RankOneSystem linear(const SpectrumTable& table, double s) { return weighted(table, 1.0 - s, s); }

    std::size_t pole_count() const { return poles_.size(); }
    double pole(std::size_t j) const { return poles_[j]; }
    std::uint64_t multiplicity(std::size_t j) const { return mult_[j]; }
    double rho() const { return rho_; }
    std::uint64_t dimension() const { return dim_; }

    /// Index of the merged pole carrying table level j.
    std::size_t pole_of_level(std::size_t j) const { return level_to_pole_[j]; }

    /// Number of secular (non-deflated) roots.
    std::size_t root_count() const { return rho_ == 0.0 ? 0 : poles_.size(); }

    double secular(double lambda) const;
    double secular_derivative(double lambda) const;

    Bracket bracket(std::size_t k) const;

    /// k-th secular root by bisection to width 1e-13 (1 + |bracket|), then one
    /// safeguarded Newton polish.
    double root(std::size_t k) const;

    /// Full ascending spectrum as runs; multiplicities sum to N.
    std::vector<EigenRun> spectrum() const;

    /// The k smallest eigenvalues with multiplicity, solving only the roots needed.
    std::vector<EigenRun> lowest_runs(std::uint64_t k) const;

    /// Normalised eigenvector of secular root k in merged-pole coordinates:
    /// component j is proportional to sqrt(mu_j) / (d_j - lambda).
    std::vector<double> root_vector(std::size_t k, double lambda) const;

private:
    RankOneSystem() = default;

    std::vector<double> poles_;
    std::vector<std::uint64_t> mult_;
    std::vector<double> weight_;
    std::vector<std::size_t> level_to_pole_;
    double rho_ = 0.0;
    std::uint64_t dim_ = 0;
};

}  // namespace qagap
