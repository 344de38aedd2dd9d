#include "qagap/secular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qagap/errors.hpp"

namespace qagap {

namespace {

constexpr int kMaxBisection = 400;
constexpr double kBracketRelTol = 1e-13;
constexpr double kOuterRounding = 1e-12;

}  // namespace

RankOneSystem RankOneSystem::weighted(const SpectrumTable& table, double f, double g) {
    const std::size_t levels = table.distinct_count();
    std::vector<double> d(levels);
    for (std::size_t j = 0; j < levels; ++j) d[j] = f + g * table.level(j).value;

    std::vector<std::size_t> order(levels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    RankOneSystem sys;
    sys.rho_ = f;
    sys.dim_ = table.dimension();
    sys.level_to_pole_.assign(levels, 0);
    for (std::size_t idx : order) {
        // Poles that coincide in floating point form one deflation group.
        if (sys.poles_.empty() || d[idx] != sys.poles_.back()) {
            sys.poles_.push_back(d[idx]);
            sys.mult_.push_back(0);
        }
        sys.mult_.back() += table.level(idx).multiplicity;
        sys.level_to_pole_[idx] = sys.poles_.size() - 1;
    }
    const double inv_dim = 1.0 / static_cast<double>(sys.dim_);
    sys.weight_.resize(sys.mult_.size());
    for (std::size_t j = 0; j < sys.mult_.size(); ++j) sys.weight_[j] = static_cast<double>(sys.mult_[j]) * inv_dim;
    return sys;
}

double RankOneSystem::secular(double lambda) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < poles_.size(); ++j) sum += weight_[j] / (poles_[j] - lambda);
    return 1.0 - rho_ * sum;
}

double RankOneSystem::secular_derivative(double lambda) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < poles_.size(); ++j) {
        const double diff = poles_[j] - lambda;
        sum += weight_[j] / (diff * diff);
    }
    return -rho_ * sum;
}

RankOneSystem::Bracket RankOneSystem::bracket(std::size_t k) const {
    if (k >= root_count()) throw InternalInvariantError("secular root index out of range");
    const std::size_t last = poles_.size() - 1;
    if (rho_ > 0.0) {
        if (k == 0) return {poles_[0] - rho_, poles_[0]};
        return {poles_[k - 1], poles_[k]};
    }
    if (k == last) return {poles_[last], poles_[last] - rho_};
    return {poles_[k], poles_[k + 1]};
}

double RankOneSystem::root(std::size_t k) const {
    auto [lo, hi] = bracket(k);
    const bool decreasing = rho_ > 0.0;

    // The outer bracket end is not a pole; the secular function is >= 0 there and
    // vanishes exactly when all weight sits on the adjacent pole.
    if (decreasing && k == 0) {
        const double at_end = secular(lo);
        if (at_end < -kOuterRounding) throw InternalInvariantError("secular function negative at lower outer bracket");
        if (at_end <= 0.0) return lo;
    }
    if (!decreasing && k + 1 == poles_.size()) {
        const double at_end = secular(hi);
        if (at_end < -kOuterRounding) throw InternalInvariantError("secular function negative at upper outer bracket");
        if (at_end <= 0.0) return hi;
    }

    int iterations = 0;
    while (hi - lo > kBracketRelTol * (1.0 + std::max(std::abs(lo), std::abs(hi)))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = secular(mid);
        if ((value > 0.0) == decreasing) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (++iterations > kMaxBisection) throw InternalInvariantError("bisection failed to converge");
    }

    double lambda = 0.5 * (lo + hi);
    const double value = secular(lambda);
    const double slope = secular_derivative(lambda);
    if (std::isfinite(value) && slope != 0.0 && std::isfinite(slope)) {
        const double polished = lambda - value / slope;
        if (polished > lo && polished < hi && std::abs(secular(polished)) < std::abs(value)) lambda = polished;
    }
    if (!std::isfinite(lambda)) throw InternalInvariantError("secular root is not finite");
    return lambda;
}

std::vector<EigenRun> RankOneSystem::lowest_runs(std::uint64_t k) const {
    std::vector<EigenRun> out;
    std::uint64_t have = 0;
    auto push = [&](double value, std::uint64_t mult, bool deflated) {
        if (mult == 0 || have >= k) return;
        const auto take = std::min(mult, k - have);
        out.push_back({value, take, deflated});
        have += take;
    };
    const std::size_t count = poles_.size();
    if (rho_ == 0.0) {
        for (std::size_t j = 0; j < count && have < k; ++j) push(poles_[j], mult_[j], false);
    } else if (rho_ > 0.0) {
        for (std::size_t j = 0; j < count && have < k; ++j) {
            push(root(j), 1, false);
            push(poles_[j], mult_[j] - 1, true);
        }
    } else {
        for (std::size_t j = 0; j < count && have < k; ++j) {
            push(poles_[j], mult_[j] - 1, true);
            push(root(j), 1, false);
        }
    }
    return out;
}

std::vector<EigenRun> RankOneSystem::spectrum() const { return lowest_runs(dim_); }

std::vector<double> RankOneSystem::root_vector(std::size_t k, double lambda) const {
    if (k >= root_count()) throw InternalInvariantError("secular root index out of range");
    std::vector<double> v(poles_.size());
    double norm2 = 0.0;
    for (std::size_t j = 0; j < poles_.size(); ++j) {
        const double diff = poles_[j] - lambda;
        if (diff == 0.0) {
            // The root coincides with a pole in floating point: the vector is that coordinate.
            std::fill(v.begin(), v.end(), 0.0);
            v[j] = 1.0;
            return v;
        }
        v[j] = std::sqrt(weight_[j]) / diff;
        norm2 += v[j] * v[j];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

}  // namespace qagap
