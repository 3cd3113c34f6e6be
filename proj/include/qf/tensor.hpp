#pragma once

#include <array>
#include <cstdint>

namespace qf {

inline constexpr int kTensorSize = 81;

/// Flat index of Q_{i,j,k,l}, all indices 0-based in [0, 3).
constexpr int tensor_index(int i, int j, int k, int l) noexcept { return ((i * 3 + j) * 3 + k) * 3 + l; }

/// Index of the given mode (0..3) of a flat index.
constexpr int mode_index(int flat, int mode) noexcept {
    constexpr int stride[4] = {27, 9, 3, 1};
    return (flat / stride[mode]) % 3;
}

constexpr int with_mode_index(int flat, int mode, int value) noexcept {
    constexpr int stride[4] = {27, 9, 3, 1};
    return flat + (value - mode_index(flat, mode)) * stride[mode];
}

/// A 3x3x3x3 tensor; a point of the ambient space of the quadrifocal variety.
template <class T>
struct QuadTensor {
    std::array<T, kTensorSize> entries{};

    T& operator()(int i, int j, int k, int l) { return entries[tensor_index(i, j, k, l)]; }
    const T& operator()(int i, int j, int k, int l) const { return entries[tensor_index(i, j, k, l)]; }

    bool operator==(const QuadTensor&) const = default;
};

using ModularTensor = QuadTensor<std::uint64_t>;

}  // namespace qf
