#pragma once

// Symmetric group characters (Murnaghan-Nakayama) and the 4-fold Kronecker
// multiplicities that count highest weight vectors in S^d(V1*⊗V2*⊗V3*⊗V4*).

#include <cstdint>
#include <memory>
#include <vector>

#include "qf/partition.hpp"

namespace qf {

/// chi^lambda on the class of cycle type mu. Throws std::invalid_argument if
/// |lambda| != |mu|.
std::int64_t symmetric_group_character(const Partition& lambda, const Partition& mu);

/// Centralizer order z_mu = prod_i i^{m_i} m_i!, so |class mu| = d!/z_mu.
std::uint64_t centralizer_order(const Partition& mu);
std::uint64_t class_size(const Partition& mu);

/// Full character table of S_d; rows and columns are indexed by partitions_of(d).
class CharacterTable {
public:
    explicit CharacterTable(int d);

    int degree() const noexcept { return d_; }
    const std::vector<Partition>& partitions() const noexcept { return parts_; }
    std::size_t index_of(const Partition& p) const;
    std::int64_t value(std::size_t lambda, std::size_t mu) const { return table_[lambda * parts_.size() + mu]; }
    std::uint64_t class_size(std::size_t mu) const { return class_sizes_[mu]; }

private:
    int d_;
    std::vector<Partition> parts_;
    std::vector<std::int64_t> table_;
    std::vector<std::uint64_t> class_sizes_;
};

/// Shared, lazily built table for degree d. Safe to call from many threads.
std::shared_ptr<const CharacterTable> character_table(int d);

/// m_pi = (1/d!) sum_mu |class mu| prod_i chi^{pi_i}(mu).
std::uint64_t kronecker_multiplicity(const MultiPartition& shape);

}  // namespace qf
