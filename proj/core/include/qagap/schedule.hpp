#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qagap {

/// Number of uniform points on which schedules are validated.
inline constexpr int kScheduleValidationPoints = 4097;

/// Interpolation weights of H(t) = f(t/T) H0 + g(t/T) H1, parametrised by
/// normalised time u = t/T in [0, 1].
///
/// Construction validates the boundary conditions f(0)=1, g(0)=0, f(1)=0,
/// g(1)=1, the strict sum bounds c1 < f+g < c2 and a grid continuity budget
/// (adjacent jumps no larger than c2 / 64). Individual weights may be negative.
class Schedule {
public:
    using Weight = std::function<double(double)>;

    struct Bounds {
        double c1;
        double c2;
    };

    /// Arbitrary weights. Missing derivatives fall back to central differences;
    /// missing bounds are taken as the grid extrema of f+g widened by 2^-10.
    static Schedule custom(std::string name, Weight f, Weight g, std::optional<Weight> df = std::nullopt,
                           std::optional<Weight> dg = std::nullopt, std::optional<Bounds> bounds = std::nullopt,
                           double total_time = 1.0);

    static Schedule linear(double total_time = 1.0);
    /// f = 1 - u^p, g = u^p.
    static Schedule power_law(double exponent, double total_time = 1.0);
    /// g = 3u^2 - 2u^3, f = 1 - g.
    static Schedule smoothstep(double total_time = 1.0);
    /// f = (1-u)(1+k u), g = u(1+k(1-u)); f+g = 1 + 2k u(1-u).
    static Schedule bulge(double kappa, double total_time = 1.0);
    /// Piecewise-linear interpolation of sampled weights; u must be strictly
    /// increasing from 0 to 1.
    static Schedule table(std::vector<double> u, std::vector<double> f, std::vector<double> g,
                          double total_time = 1.0);

    double initial_weight(double u) const { return f_(u); }
    double final_weight(double u) const { return g_(u); }
    double initial_rate(double u) const;
    double final_rate(double u) const;

    double c1() const { return bounds_.c1; }
    double c2() const { return bounds_.c2; }
    double total_time() const { return total_time_; }
    const std::string& name() const { return name_; }
    bool is_linear() const { return linear_; }

    Schedule with_total_time(double total_time) const;

private:
    Schedule() = default;
    void validate_and_bound(std::optional<Bounds> bounds);

    std::string name_;
    Weight f_;
    Weight g_;
    std::optional<Weight> df_;
    std::optional<Weight> dg_;
    Bounds bounds_{0.0, 0.0};
    double total_time_ = 1.0;
    bool linear_ = false;
};

/// The factorisation H(u) = scale * ((1-s) H0 + s H1).
struct NormalizedPoint {
    double scale;
    double s;
};

NormalizedPoint normalized_point(const Schedule& schedule, double u);

/// Every u in [0,1] whose normalised point has s(u) = target: sign changes on a
/// uniform grid refined by bisection. A monotone schedule yields one preimage.
std::vector<double> preimages(const Schedule& schedule, double target, int grid = kScheduleValidationPoints);

/// Parses "linear", "power:<p>", "smoothstep", "bulge:<k>" or a path to a
/// table schedule JSON file.
Schedule parse_schedule(std::string_view spec, double total_time = 1.0);

Schedule schedule_from_json(const nlohmann::json& j, double total_time = 1.0);
Schedule load_schedule_file(const std::filesystem::path& path, double total_time = 1.0);

}  // namespace qagap
