#pragma once

// Partitions and 4-fold multipartitions indexing GL(3)^4 Schur modules.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qf {

class Partition {
public:
    Partition() = default;
    /// Throws std::invalid_argument unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept { return size_; }
    int rows() const noexcept { return static_cast<int>(parts_.size()); }
    int operator[](int i) const noexcept { return i < rows() ? parts_[i] : 0; }

    Partition conjugate() const;
    /// Column heights, left to right.
    std::vector<int> column_heights() const { return conjugate().parts(); }

    std::string to_string() const;  // "(3,1,1)"; "()" for the empty partition
    std::string compact() const;     // "311"; "0" for the empty partition

    auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }
    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

/// All partitions of n with at most max_rows rows, in decreasing lexicographic order.
std::vector<Partition> partitions_of(int n, int max_rows = 1 << 20);

/// dim S_pi(C^n) by the hook-content formula; 0 when pi has more than n rows.
std::uint64_t weyl_dim(const Partition& p, int n = 3);

class MultiPartition {
public:
    MultiPartition() = default;
    /// Throws std::invalid_argument unless all four partitions have the same size.
    explicit MultiPartition(std::array<Partition, 4> parts);
    MultiPartition(Partition a, Partition b, Partition c, Partition d)
        : MultiPartition(std::array<Partition, 4>{std::move(a), std::move(b), std::move(c), std::move(d)}) {}

    const Partition& operator[](int i) const noexcept { return parts_[i]; }
    const std::array<Partition, 4>& parts() const noexcept { return parts_; }
    int degree() const noexcept { return parts_[0].size(); }

    /// Lexicographically maximal reordering of the four factors.
    MultiPartition orbit_representative() const;
    bool is_orbit_representative() const { return *this == orbit_representative(); }
    /// Number of distinct orderings of the four factors: 1, 4, 6, 12 or 24.
    int orbit_size() const;
    /// Every distinct ordering, sorted.
    std::vector<MultiPartition> orbit() const;

    /// Product of the four GL(3) dimensions.
    std::uint64_t weyl_dim_product() const;

    std::string to_string() const;  // "(3)(3)(1,1,1)(1,1,1)"
    std::string key() const;        // "3-3-111-111", filesystem safe

    auto operator<=>(const MultiPartition& o) const = default;
    bool operator==(const MultiPartition& o) const = default;

private:
    std::array<Partition, 4> parts_;
};

}  // namespace qf
