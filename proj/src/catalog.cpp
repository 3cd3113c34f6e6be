#include "qf/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "qf/characters.hpp"

namespace qf {

std::array<std::uint64_t, 4> IsotypicComponent::factor_dims() const {
    std::array<std::uint64_t, 4> d{};
    for (int i = 0; i < 4; ++i) d[i] = weyl_dim(shape[i], 3);
    return d;
}

std::vector<IsotypicComponent> isotypic_catalog(int d) {
    if (d < 1) throw std::invalid_argument("isotypic_catalog: degree must be positive");
    const auto parts = partitions_of(d, 3);  // decreasing order
    const std::size_t n = parts.size();
    std::vector<IsotypicComponent> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c)
                for (std::size_t e = c; e < n; ++e) {
                    MultiPartition shape(parts[a], parts[b], parts[c], parts[e]);
                    const auto m = kronecker_multiplicity(shape);
                    if (m == 0) continue;
                    const int orbit = shape.orbit_size();
                    out.push_back({std::move(shape), m, orbit});
                }
    return out;
}

mpz_class catalog_total_dimension(const std::vector<IsotypicComponent>& catalog) {
    mpz_class total = 0;
    for (const auto& c : catalog) {
        mpz_class term = c.orbit_size;
        term *= static_cast<unsigned long>(c.ring_multiplicity);
        term *= static_cast<unsigned long>(c.shape.weyl_dim_product());
        total += term;
    }
    return total;
}

std::uint64_t module_dimension(const MultiPartition& shape, std::uint64_t k) {
    return static_cast<std::uint64_t>(shape.orbit_size()) * k * shape.weyl_dim_product();
}

std::uint64_t module_dimension(const IsotypicComponent& c, std::uint64_t k) {
    if (k > c.ring_multiplicity) throw std::invalid_argument("module_dimension: k exceeds ring multiplicity");
    return static_cast<std::uint64_t>(c.orbit_size) * k * c.shape.weyl_dim_product();
}

std::vector<Partition> pieri_add_box(const Partition& p) {
    if (p.rows() > 3) throw std::invalid_argument("pieri_add_box: more than three rows");
    std::vector<Partition> out;
    const auto& parts = p.parts();
    for (int r = 0; r <= p.rows() && r < 3; ++r) {
        if (r > 0 && r < p.rows() && parts[r - 1] == parts[r]) continue;
        std::vector<int> next = parts;
        if (r == p.rows())
            next.push_back(1);
        else
            ++next[r];
        out.emplace_back(std::move(next));
    }
    return out;
}

Decomposition tensor_with_vector_reps(const Decomposition& decomp) {
    Decomposition out;
    for (const auto& [shape, mult] : decomp) {
        if (mult == 0) continue;
        std::array<std::vector<Partition>, 4> grown;
        for (int i = 0; i < 4; ++i) grown[i] = pieri_add_box(shape[i]);
        for (const auto& a : grown[0])
            for (const auto& b : grown[1])
                for (const auto& c : grown[2])
                    for (const auto& e : grown[3]) out[MultiPartition(a, b, c, e)] += mult;
    }
    return out;
}

Decomposition expand_orbits(const std::vector<std::pair<MultiPartition, std::uint64_t>>& reps) {
    Decomposition out;
    for (const auto& [shape, mult] : reps) {
        if (mult == 0) continue;
        for (auto& s : shape.orbit()) out[s] += mult;
    }
    return out;
}

}  // namespace qf
