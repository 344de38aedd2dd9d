#include "qagap/minimize.hpp"

#include <algorithm>
#include <cmath>

#include "qagap/errors.hpp"

namespace qagap {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

ScalarMinimum refine_sampled_minimum(const std::function<double(double)>& fn, const std::vector<double>& xs,
                                     const std::vector<double>& ys, double tol) {
    if (xs.empty() || xs.size() != ys.size()) throw InternalInvariantError("sample arrays mismatch");
    const std::size_t count = xs.size();
    ScalarMinimum best{xs[0], ys[0]};
    for (std::size_t i = 0; i < count; ++i) {
        if (ys[i] < best.value) best = {xs[i], ys[i]};
    }
    if (count < 2) return best;

    for (std::size_t i = 0; i < count; ++i) {
        const bool left_ok = i == 0 || ys[i] < ys[i - 1];
        const bool right_ok = i + 1 == count || ys[i] <= ys[i + 1];
        if (!left_ok || !right_ok) continue;
        const double lo = xs[i == 0 ? 0 : i - 1];
        const double hi = xs[i + 1 == count ? i : i + 1];
        if (!(hi - lo > tol)) continue;
        const auto refined = golden_section_minimize(fn, lo, hi, tol);
        if (refined.value < best.value) best = refined;
    }
    return best;
}

std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

}  // namespace qagap
