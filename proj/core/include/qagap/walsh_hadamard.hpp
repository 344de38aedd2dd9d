#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "qagap/errors.hpp"

namespace qagap {

inline bool is_power_of_two(std::size_t len) { return len > 0 && (len & (len - 1)) == 0; }

/// In-place orthonormal Walsh-Hadamard transform, i.e. multiplication by the
/// n-fold tensor power of the single-qubit Hadamard gate. The transform is its
/// own inverse.
template <typename T>
void walsh_hadamard(std::span<T> vec) {
    const std::size_t len = vec.size();
    if (!is_power_of_two(len)) throw DimensionError("Walsh-Hadamard length must be a power of two");
    for (std::size_t h = 1; h < len; h *= 2) {
        for (std::size_t i = 0; i < len; i += h * 2) {
            for (std::size_t j = i; j < i + h; ++j) {
                const T x = vec[j];
                const T y = vec[j + h];
                vec[j] = x + y;
                vec[j + h] = x - y;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(len));
    for (auto& x : vec) x *= scale;
}

}  // namespace qagap
