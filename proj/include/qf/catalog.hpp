#pragma once

// Isotypic bookkeeping for S^d(V1*⊗V2*⊗V3*⊗V4*) with dim V_i = 3, up to the
// S4 action permuting the four factors.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "qf/partition.hpp"

namespace qf {

struct IsotypicComponent {
    MultiPartition shape;            // orbit representative
    std::uint64_t ring_multiplicity; // m_pi
    int orbit_size;

    std::array<std::uint64_t, 4> factor_dims() const;
};

/// All S4-orbit representatives of degree-d multipartitions with at most three
/// rows per factor and m_pi > 0, in decreasing lexicographic order.
std::vector<IsotypicComponent> isotypic_catalog(int d);

/// sum over the catalog of orbit_size * m_pi * prod dims; equals C(80+d, d).
mpz_class catalog_total_dimension(const std::vector<IsotypicComponent>& catalog);

/// orbit_size * k * prod_i weyl_dim(pi_i, 3).
std::uint64_t module_dimension(const MultiPartition& shape, std::uint64_t k);
std::uint64_t module_dimension(const IsotypicComponent& c, std::uint64_t k);

/// One-box additions keeping at most three rows, ordered by the row that grows.
std::vector<Partition> pieri_add_box(const Partition& p);

/// Multiset of multipartitions (full, not orbit-reduced).
using Decomposition = std::map<MultiPartition, std::uint64_t>;

/// Tensor with V1*⊗V2*⊗V3*⊗V4*: Pieri in each of the four factors.
Decomposition tensor_with_vector_reps(const Decomposition& decomp);

/// Expands (orbit representative, multiplicity) pairs to every ordering.
Decomposition expand_orbits(const std::vector<std::pair<MultiPartition, std::uint64_t>>& reps);

}  // namespace qf
