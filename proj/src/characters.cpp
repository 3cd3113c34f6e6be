#include "qf/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qf {

namespace {

// Beta-set (abacus) form of Murnaghan-Nakayama: removing a rim hook of length
// r moves one bead from b to b - r; the sign is (-1)^(beads jumped over).
std::int64_t mn_rec(std::vector<int>& beads, const std::vector<int>& mu, std::size_t pos) {
    if (pos == mu.size()) return 1;
    const int r = mu[pos];
    std::int64_t total = 0;
    for (std::size_t i = 0; i < beads.size(); ++i) {
        const int b = beads[i];
        const int target = b - r;
        if (target < 0) continue;
        if (std::find(beads.begin(), beads.end(), target) != beads.end()) continue;
        int jumped = 0;
        for (int x : beads)
            if (x > target && x < b) ++jumped;
        beads[i] = target;
        const std::int64_t sub = mn_rec(beads, mu, pos + 1);
        beads[i] = b;
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    return total;
}

}  // namespace

std::int64_t symmetric_group_character(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw std::invalid_argument("character: |lambda| != |mu|");
    const int len = lambda.rows();
    std::vector<int> beads(len);
    for (int i = 0; i < len; ++i) beads[i] = lambda[i] + (len - 1 - i);
    return mn_rec(beads, mu.parts(), 0);
}

std::uint64_t centralizer_order(const Partition& mu) {
    std::map<int, int> mult;
    for (int p : mu.parts()) ++mult[p];
    std::uint64_t z = 1;
    for (auto [part, m] : mult) {
        for (int k = 0; k < m; ++k) z *= static_cast<std::uint64_t>(part);
        for (int k = 2; k <= m; ++k) z *= static_cast<std::uint64_t>(k);
    }
    return z;
}

std::uint64_t class_size(const Partition& mu) {
    std::uint64_t f = 1;
    for (int k = 2; k <= mu.size(); ++k) f *= static_cast<std::uint64_t>(k);
    return f / centralizer_order(mu);
}

CharacterTable::CharacterTable(int d) : d_(d), parts_(partitions_of(d)) {
    const std::size_t n = parts_.size();
    table_.resize(n * n);
    class_sizes_.resize(n);
    for (std::size_t j = 0; j < n; ++j) class_sizes_[j] = qf::class_size(parts_[j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = symmetric_group_character(parts_[i], parts_[j]);
}

std::size_t CharacterTable::index_of(const Partition& p) const {
    auto it = std::lower_bound(parts_.begin(), parts_.end(), p, std::greater<>());
    if (it == parts_.end() || *it != p) throw std::invalid_argument("partition not of this degree: " + p.to_string());
    return static_cast<std::size_t>(it - parts_.begin());
}

std::shared_ptr<const CharacterTable> character_table(int d) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CharacterTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[d];
    if (!slot) slot = std::make_shared<const CharacterTable>(d);
    return slot;
}

std::uint64_t kronecker_multiplicity(const MultiPartition& shape) {
    const int d = shape.degree();
    auto table = character_table(d);
    std::array<std::size_t, 4> idx{};
    for (int i = 0; i < 4; ++i) idx[i] = table->index_of(shape[i]);
    __int128 sum = 0;
    for (std::size_t mu = 0; mu < table->partitions().size(); ++mu) {
        __int128 prod = static_cast<__int128>(table->class_size(mu));
        for (int i = 0; i < 4; ++i) prod *= table->value(idx[i], mu);
        sum += prod;
    }
    __int128 fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    if (sum % fact != 0 || sum < 0) throw std::logic_error("kronecker_multiplicity: character sum not a multiplicity");
    return static_cast<std::uint64_t>(sum / fact);
}

}  // namespace qf
