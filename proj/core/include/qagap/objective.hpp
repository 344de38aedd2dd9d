#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qagap {

/// Polynomial bound used when the caller does not supply one.
inline constexpr double kDefaultValueBound = 100.0;

/// Largest n for which the full 2^n cost table may be enumerated.
inline constexpr int kMaxEnumerationQubits = 26;

/// Largest n a compressed table may describe (multiplicities are 64-bit).
inline constexpr int kMaxTableQubits = 62;

/// One distinct cost value together with the number of basis states carrying it.
struct Level {
    double value = 0.0;
    std::uint64_t multiplicity = 0;

    friend bool operator==(const Level&, const Level&) = default;
};

/// Absolute tolerance under which two cost values are treated as one level.
double merge_tolerance(double bound);

/// The multiset {f(z) : z in {0,1}^n} stored as sorted distinct values with
/// multiplicities. Immutable once built.
///
/// Invariants: values strictly increasing, every multiplicity >= 1, the
/// multiplicities sum to 2^n, and every |value| <= bound.
class SpectrumTable {
public:
    /// Validating constructor. `levels` must already be strictly increasing.
    SpectrumTable(int n, std::vector<Level> levels, double bound = kDefaultValueBound);

    /// Sorts, merges values closer than merge_tolerance(bound), then validates.
    static SpectrumTable from_unsorted(int n, std::vector<Level> levels,
                                       double bound = kDefaultValueBound);

    int qubits() const { return n_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
    double bound() const { return bound_; }
    std::span<const Level> levels() const { return levels_; }
    std::size_t distinct_count() const { return levels_.size(); }
    const Level& level(std::size_t j) const { return levels_[j]; }
    double min_value() const { return levels_.front().value; }
    double max_abs_value() const;

    /// True when the smallest value is exactly zero.
    bool is_normalized() const { return levels_.front().value == 0.0; }

    /// All 2^n values in ascending order (capacity guarded).
    std::vector<double> expand() const;

    friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;

private:
    int n_;
    std::vector<Level> levels_;
    double bound_;
};

/// Enumerates f over all n-bit inputs and compresses the result.
/// Bit q of the index z is the q-th input bit. Throws CapacityError when
/// n > kMaxEnumerationQubits.
SpectrumTable from_function(const std::function<double(std::uint64_t)>& f, int n,
                            double bound = kDefaultValueBound);

/// Subtracts the minimum value; returns the shifted table and the offset removed.
std::pair<SpectrumTable, double> normalize_shift(const SpectrumTable& table);

enum class InstanceKind { Grover, TwoLevel, HammingWeight, RandomPolyBounded, ExplicitFile };

InstanceKind parse_instance_kind(std::string_view name);
std::string_view to_string(InstanceKind kind);

struct InstanceSpec {
    InstanceKind kind = InstanceKind::Grover;
    /// Qubit count; 0 means "take it from the file" for explicit-file instances.
    int n = 0;
    /// Excited value for two-level instances.
    double level = 1.0;
    /// Ground multiplicity for two-level instances.
    std::uint64_t ground_count = 1;
    double bound = kDefaultValueBound;
    std::uint64_t seed = 0;
    std::filesystem::path file;
};

/// Builds one of the supported cost spectra. Throws ValidationError on bad params.
SpectrumTable build_instance(const InstanceSpec& spec);

/// a_1 = 0, a_i = 2 + i/2 for i = 2..16 (n = 4).
SpectrumTable fig1_instance();

/// w(z) = number of set bits of z.
inline double hamming_weight(std::uint64_t z) { return static_cast<double>(__builtin_popcountll(z)); }

/// Binomial coefficient C(n, k) as an exact 64-bit integer (n <= 62).
std::uint64_t binomial(int n, int k);

nlohmann::json to_json(const SpectrumTable& table);
SpectrumTable table_from_json(const nlohmann::json& j, double bound = kDefaultValueBound);
SpectrumTable load_instance_file(const std::filesystem::path& path, double bound = kDefaultValueBound);

}  // namespace qagap
