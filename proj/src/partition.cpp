#include "qf/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qf {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        size_ += parts_[i];
    }
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition{};
    for (int j = 0; j < parts_[0]; ++j) {
        int h = 0;
        while (h < rows() && parts_[h] > j) ++h;
        c.push_back(h);
    }
    return Partition(std::move(c));
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

std::string Partition::compact() const {
    if (parts_.empty()) return "0";
    bool wide = std::any_of(parts_.begin(), parts_.end(), [](int p) { return p > 9; });
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (wide && i) s += '.';
        s += std::to_string(parts_[i]);
    }
    return s;
}

namespace {

void partitions_rec(int remaining, int max_part, int rows_left, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (rows_left == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, rows_left - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_rows) {
    std::vector<Partition> out;
    if (n < 0) return out;
    std::vector<int> cur;
    partitions_rec(n, n, max_rows, cur, out);
    return out;
}

std::uint64_t weyl_dim(const Partition& p, int n) {
    if (p.rows() > n) return 0;
    const Partition c = p.conjugate();
    unsigned __int128 num = 1;
    unsigned __int128 den = 1;
    for (int i = 0; i < p.rows(); ++i) {
        for (int j = 0; j < p[i]; ++j) {
            const int content = j - i;
            const int hook = (p[i] - j - 1) + (c[j] - i - 1) + 1;
            num *= static_cast<unsigned>(n + content);
            den *= static_cast<unsigned>(hook);
            unsigned __int128 a = num, b = den;
            while (b) {
                unsigned __int128 t = a % b;
                a = b;
                b = t;
            }
            num /= a;
            den /= a;
        }
    }
    return static_cast<std::uint64_t>(num / den);
}

MultiPartition::MultiPartition(std::array<Partition, 4> parts) : parts_(std::move(parts)) {
    for (int i = 1; i < 4; ++i)
        if (parts_[i].size() != parts_[0].size())
            throw std::invalid_argument("multipartition factors must have equal size");
}

MultiPartition MultiPartition::orbit_representative() const {
    auto p = parts_;
    std::sort(p.begin(), p.end(), std::greater<>());
    return MultiPartition(std::move(p));
}

int MultiPartition::orbit_size() const {
    auto p = parts_;
    std::sort(p.begin(), p.end());
    int denom = 1;
    int run = 1;
    for (int i = 1; i <= 4; ++i) {
        if (i < 4 && p[i] == p[i - 1]) {
            ++run;
        } else {
            for (int k = 2; k <= run; ++k) denom *= k;
            run = 1;
        }
    }
    return 24 / denom;
}

std::vector<MultiPartition> MultiPartition::orbit() const {
    auto p = parts_;
    std::sort(p.begin(), p.end());
    std::vector<MultiPartition> out;
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::uint64_t MultiPartition::weyl_dim_product() const {
    std::uint64_t d = 1;
    for (const auto& p : parts_) d *= weyl_dim(p, 3);
    return d;
}

std::string MultiPartition::to_string() const {
    std::string s;
    for (const auto& p : parts_) s += p.to_string();
    return s;
}

std::string MultiPartition::key() const {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += '-';
        s += parts_[i].compact();
    }
    return s;
}

}  // namespace qf
