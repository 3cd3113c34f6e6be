#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qf/field.hpp"
#include "qf/matrix.hpp"

using namespace qf;

namespace {

// Oracle: rank by brute force over subsets of rows and columns, via the
// cofactor determinant over Q. Only for tiny matrices.
mpq_class cofactor_det(const std::vector<std::vector<mpq_class>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpq_class s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<mpq_class>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpq_class> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[r][j]);
            minor.push_back(row);
        }
        s += (c % 2 ? -1 : 1) * a[0][c] * cofactor_det(minor);
    }
    return s;
}

std::size_t minor_rank(const std::vector<std::vector<long>>& m) {
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t best = 0;
    for (unsigned rs = 1; rs < (1u << rows); ++rs)
        for (unsigned cs = 1; cs < (1u << cols); ++cs) {
            const auto k = static_cast<std::size_t>(__builtin_popcount(rs));
            if (k != static_cast<std::size_t>(__builtin_popcount(cs)) || k <= best) continue;
            std::vector<std::vector<mpq_class>> sub;
            for (std::size_t r = 0; r < rows; ++r) {
                if (!(rs >> r & 1)) continue;
                std::vector<mpq_class> row;
                for (std::size_t c = 0; c < cols; ++c)
                    if (cs >> c & 1) row.push_back(m[r][c]);
                sub.push_back(row);
            }
            if (cofactor_det(sub) != 0) best = k;
        }
    return best;
}

template <Field F>
DenseMatrix<typename F::value_type> lift(const F& f, const std::vector<std::vector<long>>& m) {
    DenseMatrix<typename F::value_type> out(m.size(), m[0].size(), f.zero());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[0].size(); ++c) out(r, c) = f.from_int(m[r][c]);
    return out;
}

DenseMatrix<std::uint64_t> random_matrix(const ModularField& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    DenseMatrix<std::uint64_t> m(r, c);
    std::uniform_int_distribution<std::uint64_t> u(0, f.modulus() - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

}  // namespace

TEST_CASE("brute-force rank oracle") {
    CHECK(minor_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(minor_rank({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}) == 2);
    CHECK(minor_rank({{0, 0}, {0, 0}}) == 0);
}

TEST_CASE("prime field basics") {
    CHECK(is_prime(2147483647));
    CHECK(is_prime(2147483629));
    CHECK_FALSE(is_prime(2147483649ULL));
    CHECK_THROWS_AS(ModularField(10), std::invalid_argument);
    CHECK_THROWS_AS(ModularField(1ULL << 33), std::invalid_argument);
    const ModularField f;
    CHECK(f.from_int(-1) == f.modulus() - 1);
    CHECK(f.mul(f.inv(12345), 12345) == 1);
    CHECK_THROWS(f.inv(0));
    CHECK(f.pow(3, f.modulus() - 1) == 1);
}

TEST_CASE("rationals stay reduced") {
    const RationalField q;
    auto a = q.mul(q.from_int(6), q.inv(q.from_int(-4)));
    CHECK(a.get_num() == -3);
    CHECK(a.get_den() == 2);
    CHECK(q.mul(a, q.from_int(-2)) == 3);
    CHECK_THROWS(q.inv(0));
}

TEST_CASE("rank examples") {
    const ModularField f;
    CHECK(rank(f, identity_matrix(f, 3)) == 3);
    CHECK(rank(f, DenseMatrix<std::uint64_t>(3, 3, 0)) == 0);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<long> u(-50, 50);
        long a = u(rng), b = u(rng), c = u(rng);
        if (a == 0 && b == 0 && c == 0) continue;
        std::vector<std::vector<long>> s{{0, a, b}, {-a, 0, c}, {-b, -c, 0}};
        CHECK(rank(f, lift(f, s)) == 2);
        CHECK(rank(RationalField{}, lift(RationalField{}, s)) == 2);
    }
}

TEST_CASE("rank agrees with the minor oracle on small integer matrices") {
    std::mt19937_64 rng(11);
    const ModularField p1(2147483647), p2(2147483629);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        std::vector<std::vector<long>> m(r, std::vector<long>(c));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<long>(rng() % 5) - 2;
        // force low rank now and then
        if (t % 3 == 0 && r > 1) m[r - 1] = m[0];
        const auto want = minor_rank(m);
        CHECK(rank(RationalField{}, lift(RationalField{}, m)) == want);
        CHECK(rank(p1, lift(p1, m)) == want);
        CHECK(rank(p2, lift(p2, m)) == want);
    }
}

TEST_CASE("rank of transpose") {
    const ModularField f;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto a = random_matrix(f, 6, 9, rng);
        auto b = random_matrix(f, 9, 4, rng);
        auto m = multiply(f, a, b);
        CHECK(rank(f, m) == 4);
        CHECK(rank(f, transpose(m)) == rank(f, m));
    }
}

TEST_CASE("kernel examples") {
    const ModularField f;
    CHECK(kernel_basis(f, identity_matrix(f, 4)).cols() == 0);
    DenseMatrix<std::uint64_t> ones(1, 3, 1);
    auto k = kernel_basis(f, ones);
    CHECK(k.rows() == 3);
    CHECK(k.cols() == 2);
    CHECK(is_zero_matrix(f, multiply(f, ones, k)));
    CHECK(rank(f, k) == 2);
}

TEST_CASE("kernel of random matrices") {
    const ModularField f;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        auto m = random_matrix(f, 10, 20, rng);
        if (t % 2) m = multiply(f, random_matrix(f, 10, 6, rng), random_matrix(f, 6, 20, rng));
        auto k = kernel_basis(f, m);
        CHECK(k.cols() == 20 - rank(f, m));
        CHECK(is_zero_matrix(f, multiply(f, m, k)));
    }
    const RationalField q;
    std::vector<std::vector<long>> m{{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 1, 0}};
    auto mq = lift(q, m);
    auto kq = kernel_basis(q, mq);
    CHECK(kq.cols() == 2);
    CHECK(is_zero_matrix(q, multiply(q, mq, kq)));
}

TEST_CASE("rref is reduced") {
    const ModularField f;
    std::mt19937_64 rng(9);
    auto m = multiply(f, random_matrix(f, 5, 3, rng), random_matrix(f, 3, 7, rng));
    auto e = rref(f, m);
    REQUIRE(e.rank() == 3);
    for (std::size_t i = 0; i < e.rank(); ++i) {
        CHECK(e.reduced(i, e.pivots[i]) == 1);
        for (std::size_t r = 0; r < e.reduced.rows(); ++r)
            if (r != i) CHECK(e.reduced(r, e.pivots[i]) == 0);
    }
    for (std::size_t r = 3; r < 5; ++r)
        for (std::size_t c = 0; c < 7; ++c) CHECK(e.reduced(r, c) == 0);
}

TEST_CASE("incremental basis matches batch rank") {
    const ModularField f;
    std::mt19937_64 rng(1);
    auto m = multiply(f, random_matrix(f, 12, 5, rng), random_matrix(f, 5, 8, rng));
    IncrementalRowBasis<ModularField> b(f, 8);
    std::size_t accepted = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) accepted += b.insert({m.row(r).begin(), m.row(r).end()});
    CHECK(accepted == 5);
    CHECK(b.rank() == rank(f, m));
    CHECK_THROWS_AS(b.insert(std::vector<std::uint64_t>(3)), std::invalid_argument);
}

TEST_CASE("determinant") {
    const ModularField f;
    const RationalField q;
    std::vector<std::vector<long>> m{{2, -1, 0}, {1, 3, 4}, {0, 5, -2}};
    CHECK(determinant(q, lift(q, m)) == cofactor_det({{2, -1, 0}, {1, 3, 4}, {0, 5, -2}}));
    CHECK(determinant(f, lift(f, m)) == f.from_int(cofactor_det({{2, -1, 0}, {1, 3, 4}, {0, 5, -2}}).get_num().get_si()));
    CHECK_THROWS(determinant(f, DenseMatrix<std::uint64_t>(2, 3, 0)));
}
