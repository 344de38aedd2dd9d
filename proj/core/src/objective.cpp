#include "qagap/objective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "qagap/errors.hpp"

namespace qagap {

double merge_tolerance(double bound) { return 1e-12 * std::max(1.0, bound); }

SpectrumTable::SpectrumTable(int n, std::vector<Level> levels, double bound)
    : n_(n), levels_(std::move(levels)), bound_(bound) {
    if (n_ < 1 || n_ > kMaxTableQubits) {
        throw ValidationError("qubit count must lie in [1, " + std::to_string(kMaxTableQubits) + "], got " +
                              std::to_string(n_));
    }
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) throw ValidationError("value bound must be positive and finite");
    if (levels_.empty()) throw ValidationError("spectrum table has no entries");

    std::uint64_t total = 0;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        const auto& lv = levels_[j];
        if (!std::isfinite(lv.value)) throw ValidationError("non-finite cost value");
        if (lv.multiplicity == 0) throw ValidationError("multiplicity must be >= 1");
        if (std::abs(lv.value) > bound_) {
            std::ostringstream os;
            os << "cost value " << lv.value << " exceeds bound " << bound_;
            throw ValidationError(os.str());
        }
        if (j > 0 && !(levels_[j - 1].value < lv.value)) {
            throw ValidationError("spectrum values must be strictly increasing");
        }
        if (lv.multiplicity > dimension() - total) throw ValidationError("multiplicities exceed 2^n");
        total += lv.multiplicity;
    }
    if (total != dimension()) {
        throw ValidationError("multiplicities sum to " + std::to_string(total) + ", expected 2^" +
                              std::to_string(n_));
    }
}

SpectrumTable SpectrumTable::from_unsorted(int n, std::vector<Level> levels, double bound) {
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.value < b.value; });
    const double tol = merge_tolerance(bound);
    std::vector<Level> merged;
    merged.reserve(levels.size());
    for (const auto& lv : levels) {
        if (!merged.empty() && lv.value - merged.back().value <= tol) {
            merged.back().multiplicity += lv.multiplicity;
        } else {
            merged.push_back(lv);
        }
    }
    return SpectrumTable(n, std::move(merged), bound);
}

double SpectrumTable::max_abs_value() const {
    return std::max(std::abs(levels_.front().value), std::abs(levels_.back().value));
}

std::vector<double> SpectrumTable::expand() const {
    if (n_ > kMaxEnumerationQubits) throw CapacityError("table too large to expand");
    std::vector<double> out;
    out.reserve(dimension());
    for (const auto& lv : levels_) out.insert(out.end(), lv.multiplicity, lv.value);
    return out;
}

SpectrumTable from_function(const std::function<double(std::uint64_t)>& f, int n, double bound) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (n > kMaxEnumerationQubits) {
        throw CapacityError("cannot enumerate 2^" + std::to_string(n) + " inputs (limit 2^" +
                            std::to_string(kMaxEnumerationQubits) + ")");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<double> values(dim);
    for (std::uint64_t z = 0; z < dim; ++z) values[z] = f(z);
    std::sort(values.begin(), values.end());

    const double tol = merge_tolerance(bound);
    std::vector<Level> levels;
    for (double v : values) {
        if (!levels.empty() && v - levels.back().value <= tol) {
            ++levels.back().multiplicity;
        } else {
            levels.push_back({v, 1});
        }
    }
    return SpectrumTable(n, std::move(levels), bound);
}

std::pair<SpectrumTable, double> normalize_shift(const SpectrumTable& table) {
    const double offset = table.min_value();
    if (offset == 0.0) return {table, 0.0};
    std::vector<Level> shifted(table.levels().begin(), table.levels().end());
    for (auto& lv : shifted) lv.value -= offset;
    // The shifted range can exceed the original bound only if offset < 0.
    const double bound = std::max(table.bound(), shifted.back().value);
    return {SpectrumTable::from_unsorted(table.qubits(), std::move(shifted), bound), offset};
}

InstanceKind parse_instance_kind(std::string_view name) {
    if (name == "grover") return InstanceKind::Grover;
    if (name == "two-level") return InstanceKind::TwoLevel;
    if (name == "hamming" || name == "hamming-weight") return InstanceKind::HammingWeight;
    if (name == "random" || name == "random-poly-bounded") return InstanceKind::RandomPolyBounded;
    if (name == "file" || name == "explicit-file") return InstanceKind::ExplicitFile;
    throw ValidationError("unknown instance kind '" + std::string(name) + "'");
}

std::string_view to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Grover: return "grover";
        case InstanceKind::TwoLevel: return "two-level";
        case InstanceKind::HammingWeight: return "hamming-weight";
        case InstanceKind::RandomPolyBounded: return "random-poly-bounded";
        case InstanceKind::ExplicitFile: return "explicit-file";
    }
    return "?";
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    // c * (n - k + i) / i is C(n - k + i, i); dividing out gcd(c, i) first keeps it in 64 bits.
    for (int i = 1; i <= k; ++i) {
        const auto num = static_cast<std::uint64_t>(n - k + i);
        const auto den = static_cast<std::uint64_t>(i);
        const std::uint64_t g = std::gcd(c, den);
        c = (c / g) * (num / (den / g));
    }
    return c;
}

namespace {

SpectrumTable two_level(int n, double level, std::uint64_t ground, double bound) {
    if (n < 1 || n > kMaxTableQubits) throw ValidationError("n out of range");
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (!(level > 0.0)) throw ValidationError("two-level excited value must be > 0");
    if (ground < 1 || ground > dim - 1) throw ValidationError("two-level ground count must lie in [1, 2^n - 1]");
    return SpectrumTable(n, {{0.0, ground}, {level, dim - ground}}, bound);
}

}  // namespace

SpectrumTable build_instance(const InstanceSpec& spec) {
    switch (spec.kind) {
        case InstanceKind::Grover:
            return two_level(spec.n, 1.0, 1, spec.bound);
        case InstanceKind::TwoLevel:
            return two_level(spec.n, spec.level, spec.ground_count, spec.bound);
        case InstanceKind::HammingWeight: {
            if (spec.n < 1 || spec.n > kMaxTableQubits) throw ValidationError("n out of range");
            std::vector<Level> levels;
            for (int w = 0; w <= spec.n; ++w) levels.push_back({static_cast<double>(w), binomial(spec.n, w)});
            return SpectrumTable(spec.n, std::move(levels), spec.bound);
        }
        case InstanceKind::RandomPolyBounded: {
            if (spec.n < 1) throw ValidationError("n must be >= 1");
            std::mt19937_64 rng(spec.seed);
            const double b = spec.bound;
            // 53 random mantissa bits scaled onto [0, B]; portable across standard libraries.
            return from_function(
                [&](std::uint64_t) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * b; }, spec.n,
                spec.bound);
        }
        case InstanceKind::ExplicitFile: {
            auto t = load_instance_file(spec.file, spec.bound);
            if (spec.n > 0 && spec.n != t.qubits()) {
                throw ValidationError("instance file n does not match requested n");
            }
            return t;
        }
    }
    throw ValidationError("unhandled instance kind");
}

SpectrumTable fig1_instance() {
    std::vector<Level> levels{{0.0, 1}};
    for (int i = 2; i <= 16; ++i) levels.push_back({2.0 + i / 2.0, 1});
    return SpectrumTable(4, std::move(levels));
}

nlohmann::json to_json(const SpectrumTable& table) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& lv : table.levels()) entries.push_back({{"value", lv.value}, {"mult", lv.multiplicity}});
    return {{"n", table.qubits()}, {"entries", entries}};
}

SpectrumTable table_from_json(const nlohmann::json& j, double bound) {
    try {
        const int n = j.at("n").get<int>();
        std::vector<Level> levels;
        for (const auto& e : j.at("entries")) {
            const auto mult = e.at("mult").get<std::int64_t>();
            if (mult < 1) throw ValidationError("instance entry multiplicity must be >= 1");
            levels.push_back({e.at("value").get<double>(), static_cast<std::uint64_t>(mult)});
        }
        return SpectrumTable::from_unsorted(n, std::move(levels), bound);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed instance JSON: ") + e.what());
    }
}

SpectrumTable load_instance_file(const std::filesystem::path& path, double bound) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("instance file " + path.string() + " is not valid JSON: " + e.what());
    }
    return table_from_json(j, bound);
}

}  // namespace qagap
