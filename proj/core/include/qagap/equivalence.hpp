#pragma once

#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qagap/objective.hpp"
#include "qagap/schedule.hpp"

namespace qagap {

/// Outcome of a structural equivalence check. passed <=> max_dev <= tolerance.
struct EquivalenceVerdict {
    std::string check;
    double max_dev = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Per-case records.
    nlohmann::json cases = nlohmann::json::array();
    /// Check-specific summary fields, merged into the serialised verdict.
    nlohmann::json summary = nlohmann::json::object();
};

/// W M W with W the orthonormal n-fold Hadamard transform.
Eigen::MatrixXd hadamard_conjugate(const Eigen::MatrixXd& matrix);

/// For every marked index x and every s on a uniform grid, diagonalises
/// (1-s) W D W + s (I - |x><x|) densely and checks that
///   (a) the spectrum does not depend on x, and
///   (b) it equals the secular spectrum of the uniform-projector path at 1 - s.
EquivalenceVerdict mirror_invariance_check(const SpectrumTable& table, int s_points = 21, double tolerance = 1e-10);

/// Checks gap_path(u) = (f+g)(u) * gap_linear(s(u)) with s = g/(f+g) on a
/// uniform u grid plus the preimages of the linear minimiser. The path gap is
/// solved directly from the weighted diagonal-plus-rank-one system, the right
/// side from the linear one. Also reports min_u gap_path against c2 * gMin_linear.
EquivalenceVerdict path_rescaling_check(const SpectrumTable& table, const Schedule& schedule, int grid = 101,
                                        double tolerance = 1e-10);

nlohmann::json to_json(const EquivalenceVerdict& verdict);

}  // namespace qagap
