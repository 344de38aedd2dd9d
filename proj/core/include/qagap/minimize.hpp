#pragma once

#include <functional>
#include <vector>

namespace qagap {

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search for a minimum of fn on [lo, hi], stopping once the
/// bracket is narrower than tol. Assumes fn is unimodal on the bracket.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& fn, double lo, double hi, double tol);

/// Given samples ys = fn(xs) on sorted xs, refines every sampled local minimum
/// (strictly below its left neighbour, not above its right neighbour) by golden
/// section over its neighbouring interval and returns the best point found,
/// including the raw samples themselves.
ScalarMinimum refine_sampled_minimum(const std::function<double(double)>& fn, const std::vector<double>& xs,
                                     const std::vector<double>& ys, double tol);

/// Sorted union of several point sets with exact duplicates removed.
std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b);

}  // namespace qagap
