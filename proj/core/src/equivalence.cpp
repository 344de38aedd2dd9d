#include "qagap/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "qagap/errors.hpp"
#include "qagap/hamiltonian.hpp"
#include "qagap/minimize.hpp"
#include "qagap/secular.hpp"
#include "qagap/spectral.hpp"
#include "qagap/walsh_hadamard.hpp"

namespace qagap {

namespace {

void transform_columns(Eigen::MatrixXd& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) walsh_hadamard(std::span<double>(m.col(c).data(), m.rows()));
}

double max_abs_diff(const Eigen::VectorXd& a, const std::vector<double>& b) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[static_cast<std::size_t>(i)]));
    return dev;
}

}  // namespace

Eigen::MatrixXd hadamard_conjugate(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) throw DimensionError("Hadamard conjugation needs a square matrix");
    if (!is_power_of_two(static_cast<std::size_t>(matrix.rows()))) {
        throw DimensionError("Hadamard conjugation needs dimension 2^n");
    }
    if (static_cast<std::uint64_t>(matrix.rows()) > dense_capacity()) {
        throw CapacityError("matrix dimension exceeds dense capacity");
    }
    Eigen::MatrixXd left = matrix;
    transform_columns(left);
    Eigen::MatrixXd right = left.transpose();
    transform_columns(right);
    return right.transpose();
}

EquivalenceVerdict mirror_invariance_check(const SpectrumTable& table, int s_points, double tolerance) {
    if (table.dimension() > dense_capacity()) throw CapacityError("mirror check is dense-only; dimension too large");
    if (s_points < 2) throw ValidationError("mirror check needs at least 2 s points");

    EquivalenceVerdict verdict;
    verdict.check = "mirror_invariance";
    verdict.tolerance = tolerance;

    std::vector<double> grid(s_points);
    std::vector<std::vector<double>> secular(s_points);
    for (int i = 0; i < s_points; ++i) {
        grid[i] = static_cast<double>(i) / (s_points - 1);
        secular[i] = expanded_spectrum(table, 1.0 - grid[i]);
    }

    std::vector<Eigen::VectorXd> reference;
    for (std::uint64_t x = 0; x < table.dimension(); ++x) {
        const auto path = make_marked_mirror_path(table, x);
        double dev_marked = 0.0;
        double dev_secular = 0.0;
        for (int i = 0; i < s_points; ++i) {
            const auto values = dense_oracle(path.materialize_dense(grid[i])).values;
            if (x == 0) {
                reference.push_back(values);
            } else {
                dev_marked = std::max(dev_marked, (values - reference[i]).cwiseAbs().maxCoeff());
            }
            dev_secular = std::max(dev_secular, max_abs_diff(values, secular[i]));
        }
        verdict.max_dev = std::max({verdict.max_dev, dev_marked, dev_secular});
        verdict.cases.push_back({{"marked", x}, {"dev_vs_marked0", dev_marked}, {"dev_vs_secular", dev_secular}});
    }
    verdict.passed = verdict.max_dev <= tolerance;
    verdict.summary = {{"n", table.qubits()}, {"s_points", s_points}};
    return verdict;
}

EquivalenceVerdict path_rescaling_check(const SpectrumTable& table, const Schedule& schedule, int grid,
                                        double tolerance) {
    if (grid < 2) throw ValidationError("rescaling check needs at least 2 grid points");
    EquivalenceVerdict verdict;
    verdict.check = "path_rescaling";
    verdict.tolerance = tolerance;

    const auto linear = min_gap(table);
    std::vector<double> us(grid);
    for (int i = 0; i < grid; ++i) us[i] = static_cast<double>(i) / (grid - 1);
    us = merge_points(std::move(us), preimages(schedule, linear.s_star));

    double min_path = std::numeric_limits<double>::infinity();
    double u_at_min = 0.0;
    for (double u : us) {
        const double f = schedule.initial_weight(u);
        const double g = schedule.final_weight(u);
        const auto runs = RankOneSystem::weighted(table, f, g).lowest_runs(2);
        const double lambda1 = runs[0].value;
        const double lambda2 = runs[0].multiplicity > 1 ? runs[0].value : runs[1].value;
        const double path_gap = lambda2 - lambda1;

        const auto np = normalized_point(schedule, u);
        const double scaled = np.scale * gap(table, np.s);
        const double dev = std::abs(path_gap - scaled);
        verdict.max_dev = std::max(verdict.max_dev, dev);
        if (path_gap < min_path) {
            min_path = path_gap;
            u_at_min = u;
        }
        verdict.cases.push_back({{"u", u},
                                 {"scale", np.scale},
                                 {"s", np.s},
                                 {"gap_path", path_gap},
                                 {"gap_scaled", scaled},
                                 {"dev", dev}});
    }
    verdict.passed = verdict.max_dev <= tolerance;

    const double limit = schedule.c2() * linear.g_min;
    verdict.summary = {{"schedule", schedule.name()},
                       {"c2", schedule.c2()},
                       {"linear_g_min", linear.g_min},
                       {"linear_s_star", linear.s_star},
                       {"min_path_gap", min_path},
                       {"u_at_min", u_at_min},
                       {"c2_times_linear_g_min", limit},
                       {"margin", limit - min_path},
                       {"inequality_holds", min_path < limit}};
    return verdict;
}

nlohmann::json to_json(const EquivalenceVerdict& verdict) {
    nlohmann::json j = {{"check", verdict.check},
                        {"max_dev", verdict.max_dev},
                        {"tolerance", verdict.tolerance},
                        {"passed", verdict.passed}};
    for (const auto& [key, value] : verdict.summary.items()) j[key] = value;
    j["cases"] = verdict.cases;
    return j;
}

}  // namespace qagap
