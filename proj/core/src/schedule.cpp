#include "qagap/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "qagap/errors.hpp"

namespace qagap {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kBoundsWidening = 0x1.0p-10;
constexpr double kContinuityFraction = 0x1.0p-6;

double finite_difference(const Schedule::Weight& w, double u) {
    constexpr double h = 1e-6;
    if (u - h < 0.0) return (w(u + h) - w(u)) / h;
    if (u + h > 1.0) return (w(u) - w(u - h)) / h;
    return (w(u + h) - w(u - h)) / (2.0 * h);
}

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("bad " + std::string(what) + " parameter '" + std::string(text) + "'");
    }
    return value;
}

std::string short_number(double x) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

Schedule Schedule::custom(std::string name, Weight f, Weight g, std::optional<Weight> df, std::optional<Weight> dg,
                          std::optional<Bounds> bounds, double total_time) {
    Schedule s;
    s.name_ = std::move(name);
    s.f_ = std::move(f);
    s.g_ = std::move(g);
    s.df_ = std::move(df);
    s.dg_ = std::move(dg);
    s.total_time_ = total_time;
    s.validate_and_bound(bounds);
    return s;
}

void Schedule::validate_and_bound(std::optional<Bounds> bounds) {
    if (!(total_time_ >= 0.0) || !std::isfinite(total_time_)) throw ValidationError("total time must be >= 0");
    if (std::abs(f_(0.0) - 1.0) > kBoundaryTol || std::abs(g_(0.0)) > kBoundaryTol ||
        std::abs(f_(1.0)) > kBoundaryTol || std::abs(g_(1.0) - 1.0) > kBoundaryTol) {
        throw ValidationError("schedule '" + name_ + "' violates f(0)=1, g(0)=0, f(1)=0, g(1)=1");
    }

    const int points = kScheduleValidationPoints;
    std::vector<double> fs(points), gs(points);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(i) / (points - 1);
        fs[i] = f_(u);
        gs[i] = g_(u);
        if (!std::isfinite(fs[i]) || !std::isfinite(gs[i])) {
            throw ValidationError("schedule '" + name_ + "' is not finite on [0,1]");
        }
        lo = std::min(lo, fs[i] + gs[i]);
        hi = std::max(hi, fs[i] + gs[i]);
    }

    if (bounds) {
        bounds_ = *bounds;
        if (!(bounds_.c1 > 0.0) || !(bounds_.c2 > bounds_.c1)) {
            throw ValidationError("schedule bounds need 0 < c1 < c2");
        }
    } else {
        if (!(lo > 0.0)) throw ValidationError("schedule '" + name_ + "' has f+g <= 0 somewhere on [0,1]");
        bounds_ = {lo * (1.0 - kBoundsWidening), hi * (1.0 + kBoundsWidening)};
    }
    if (!(lo > bounds_.c1) || !(hi < bounds_.c2)) {
        throw ValidationError("schedule '" + name_ + "' leaves the open band c1 < f+g < c2");
    }

    const double budget = bounds_.c2 * kContinuityFraction;
    for (int i = 1; i < points; ++i) {
        if (std::abs(fs[i] - fs[i - 1]) > budget || std::abs(gs[i] - gs[i - 1]) > budget) {
            throw ValidationError("schedule '" + name_ + "' is discontinuous near u=" +
                                  std::to_string(static_cast<double>(i) / (points - 1)));
        }
    }
}

Schedule Schedule::linear(double total_time) {
    auto s = custom(
        "linear", [](double u) { return 1.0 - u; }, [](double u) { return u; }, [](double) { return -1.0; },
        [](double) { return 1.0; }, std::nullopt, total_time);
    s.linear_ = true;
    return s;
}

Schedule Schedule::power_law(double exponent, double total_time) {
    if (!(exponent > 0.0)) throw ValidationError("power-law exponent must be > 0");
    return custom(
        "power:" + short_number(exponent), [exponent](double u) { return 1.0 - std::pow(u, exponent); },
        [exponent](double u) { return std::pow(u, exponent); },
        [exponent](double u) { return -exponent * std::pow(u, exponent - 1.0); },
        [exponent](double u) { return exponent * std::pow(u, exponent - 1.0); }, std::nullopt, total_time);
}

Schedule Schedule::smoothstep(double total_time) {
    return custom(
        "smoothstep", [](double u) { return 1.0 - u * u * (3.0 - 2.0 * u); },
        [](double u) { return u * u * (3.0 - 2.0 * u); }, [](double u) { return -6.0 * u * (1.0 - u); },
        [](double u) { return 6.0 * u * (1.0 - u); }, std::nullopt, total_time);
}

Schedule Schedule::bulge(double kappa, double total_time) {
    if (!(kappa > -2.0)) throw ValidationError("bulge parameter must exceed -2 so that f+g stays positive");
    return custom(
        "bulge:" + short_number(kappa), [kappa](double u) { return (1.0 - u) * (1.0 + kappa * u); },
        [kappa](double u) { return u * (1.0 + kappa * (1.0 - u)); },
        [kappa](double u) { return kappa - 1.0 - 2.0 * kappa * u; },
        [kappa](double u) { return 1.0 + kappa - 2.0 * kappa * u; }, std::nullopt, total_time);
}

Schedule Schedule::table(std::vector<double> u, std::vector<double> f, std::vector<double> g, double total_time) {
    if (u.size() < 2 || u.size() != f.size() || u.size() != g.size()) {
        throw ValidationError("table schedule needs >= 2 samples and equal-length u, f, g");
    }
    if (u.front() != 0.0 || u.back() != 1.0) throw ValidationError("table schedule u must cover [0,1]");
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (!(u[i] > u[i - 1])) throw ValidationError("table schedule u must be strictly increasing");
    }
    struct Samples {
        std::vector<double> u, f, g;
        std::size_t segment(double x) const {
            auto it = std::upper_bound(u.begin(), u.end(), x);
            const auto idx = static_cast<std::size_t>(std::distance(u.begin(), it));
            return std::clamp<std::size_t>(idx, 1, u.size() - 1) - 1;
        }
        double interp(const std::vector<double>& y, double x) const {
            const auto k = segment(x);
            const double t = (x - u[k]) / (u[k + 1] - u[k]);
            return y[k] + t * (y[k + 1] - y[k]);
        }
        double slope(const std::vector<double>& y, double x) const {
            const auto k = segment(x);
            return (y[k + 1] - y[k]) / (u[k + 1] - u[k]);
        }
    };
    auto data = std::make_shared<const Samples>(Samples{std::move(u), std::move(f), std::move(g)});
    return custom(
        "table", [data](double x) { return data->interp(data->f, x); },
        [data](double x) { return data->interp(data->g, x); }, [data](double x) { return data->slope(data->f, x); },
        [data](double x) { return data->slope(data->g, x); }, std::nullopt, total_time);
}

double Schedule::initial_rate(double u) const { return df_ ? (*df_)(u) : finite_difference(f_, u); }

double Schedule::final_rate(double u) const { return dg_ ? (*dg_)(u) : finite_difference(g_, u); }

Schedule Schedule::with_total_time(double total_time) const {
    if (!(total_time >= 0.0) || !std::isfinite(total_time)) throw ValidationError("total time must be >= 0");
    Schedule copy = *this;
    copy.total_time_ = total_time;
    return copy;
}

NormalizedPoint normalized_point(const Schedule& schedule, double u) {
    const double f = schedule.initial_weight(u);
    const double g = schedule.final_weight(u);
    const double scale = f + g;
    return {scale, g / scale};
}

std::vector<double> preimages(const Schedule& schedule, double target, int grid) {
    if (grid < 2) throw ValidationError("preimage grid needs >= 2 points");
    std::vector<double> us(grid), ds(grid);
    for (int i = 0; i < grid; ++i) {
        us[i] = static_cast<double>(i) / (grid - 1);
        ds[i] = normalized_point(schedule, us[i]).s - target;
    }
    std::vector<double> out;
    for (int i = 0; i < grid; ++i) {
        if (ds[i] == 0.0) {
            out.push_back(us[i]);
            continue;
        }
        if (i + 1 < grid && ds[i + 1] != 0.0 && (ds[i] < 0.0) != (ds[i + 1] < 0.0)) {
            double lo = us[i];
            double hi = us[i + 1];
            const bool rising = ds[i] < 0.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = normalized_point(schedule, mid).s - target;
                if ((dm < 0.0) == rising) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
    }
    return out;
}

Schedule parse_schedule(std::string_view spec, double total_time) {
    if (spec == "linear") return Schedule::linear(total_time);
    if (spec == "smoothstep") return Schedule::smoothstep(total_time);
    if (spec.starts_with("power:")) return Schedule::power_law(parse_number(spec.substr(6), "power"), total_time);
    if (spec.starts_with("bulge:")) return Schedule::bulge(parse_number(spec.substr(6), "bulge"), total_time);
    return load_schedule_file(std::filesystem::path(spec), total_time);
}

Schedule schedule_from_json(const nlohmann::json& j, double total_time) {
    try {
        if (j.at("type").get<std::string>() != "table") throw ValidationError("schedule file type must be 'table'");
        return Schedule::table(j.at("u").get<std::vector<double>>(), j.at("f").get<std::vector<double>>(),
                               j.at("g").get<std::vector<double>>(), total_time);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed schedule JSON: ") + e.what());
    }
}

Schedule load_schedule_file(const std::filesystem::path& path, double total_time) {
    std::ifstream in(path);
    if (!in) throw ValidationError("unknown schedule '" + path.string() + "' (not a built-in name or readable file)");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("schedule file " + path.string() + " is not valid JSON: " + e.what());
    }
    return schedule_from_json(j, total_time);
}

}  // namespace qagap
