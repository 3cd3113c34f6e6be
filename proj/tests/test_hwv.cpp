#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "qf/catalog.hpp"
#include "qf/characters.hpp"
#include "qf/hwv.hpp"
#include "qf/matrix.hpp"
#include "qf/mingen.hpp"
#include "qf/multiview.hpp"

using namespace qf;
using Cols = std::vector<std::vector<int>>;

namespace {

MultiPartition mp(Partition a, Partition b, Partition c, Partition d) {
    return MultiPartition(std::array<Partition, 4>{a, b, c, d});
}

// Oracle: the product of column determinants expanded over every assignment
// of coordinates to letters, one mode at a time, exactly as in the
// definition. Exponential; d <= 3.
SparsePolynomial brute_expand(const Filling& fill) {
    const int d = fill.degree();
    std::map<std::vector<int>, std::int64_t> acc;
    std::vector<int> assign(4 * d, 0);
    auto column_sign = [&](int m, const std::vector<int>& col) {
        std::vector<int> v;
        for (int s : col) v.push_back(assign[m * d + s]);
        for (std::size_t a = 0; a < v.size(); ++a)
            if (v[a] >= static_cast<int>(v.size())) return 0;
        int inv = 0;
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b) {
                if (v[a] == v[b]) return 0;
                inv += v[a] > v[b];
            }
        return inv % 2 ? -1 : 1;
    };
    int total = 1;
    for (int i = 0; i < 4 * d; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        int c = code;
        for (int i = 0; i < 4 * d; ++i) {
            assign[i] = c % 3;
            c /= 3;
        }
        int sign = 1;
        for (int m = 0; m < 4 && sign; ++m)
            for (const auto& col : fill.tableaux[m].columns()) {
                sign *= column_sign(m, col);
                if (!sign) break;
            }
        if (!sign) continue;
        std::vector<int> vars;
        for (int s = 0; s < d; ++s)
            vars.push_back(tensor_index(assign[s], assign[d + s], assign[2 * d + s], assign[3 * d + s]));
        std::sort(vars.begin(), vars.end());
        acc[vars] += sign;
    }
    std::vector<SparsePolynomial::Term> terms;
    for (const auto& [v, c] : acc) terms.emplace_back(SparsePolynomial::pack(v), c);
    return SparsePolynomial(d, std::move(terms));
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// d! / prod(h!) column contents, divided by the orderings of equal columns
std::uint64_t column_strict_count(const Partition& p) {
    std::uint64_t n = factorial(p.size());
    std::map<int, int> same;
    for (int h : p.column_heights()) {
        n /= factorial(h);
        ++same[h];
    }
    for (auto [h, k] : same) n /= factorial(k);
    return n;
}

ModularTensor fresh(const ModularField& f, std::mt19937_64& rng) { return random_tensor(f, rng); }

}  // namespace

TEST_CASE("tableaux") {
    const auto t = Tableau::from_rows({{1, 2, 4}, {3}});
    CHECK(t.columns() == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
    CHECK(t.shape() == Partition{3, 1});
    CHECK(t.size() == 4);
    CHECK(t.to_string() == "[1 2 4|3]");
    CHECK(t.rows() == std::vector<std::vector<int>>{{0, 1, 3}, {2}});
    CHECK_THROWS_AS(Tableau(Cols{{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Tableau(Cols{{0}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Tableau::from_rows({{1}, {2, 3}}), std::invalid_argument);
    CHECK(column_superstandard(Partition{2, 2, 1}) == Tableau(Cols{{0, 1, 2}, {3, 4}}));
}

TEST_CASE("column-strict tableaux are counted by column contents") {
    for (int d = 1; d <= 6; ++d)
        for (const auto& p : partitions_of(d, 3)) {
            const auto ts = column_strict_tableaux(p);
            CHECK(ts.size() == column_strict_count(p));
            for (std::size_t i = 0; i < ts.size(); ++i) {
                CHECK(ts[i].shape() == p);
                if (i) CHECK(ts[i - 1] < ts[i]);
            }
        }
}

TEST_CASE("candidate stream") {
    auto row = [](int d) { return Partition({d}); };
    for (int d = 1; d <= 5; ++d) CHECK(FillingEnumerator(mp(row(d), row(d), row(d), row(d))).size() == 1);
    const auto s = mp({3}, {3}, {1, 1, 1}, {1, 1, 1});
    const auto c = enumerate_fillings(s, 100);
    REQUIRE(c.size() >= 1);
    CHECK(c[0].shape() == s);
    CHECK_FALSE(expand_filling(c[0]).is_zero());
    for (const auto& f : c) {
        CHECK(f.is_valid());
        CHECK(f.tableaux[0] == column_superstandard(s[0]));
    }
    const auto big = mp({3, 1}, {2, 2}, {2, 1, 1}, {2, 1, 1});
    FillingEnumerator e(big);
    CHECK(e.size() == column_strict_count(big[1]) * column_strict_count(big[2]) * column_strict_count(big[3]));
    CHECK(e.size() == 48);
    CHECK(enumerate_fillings(big, 5).size() == 5);
    CHECK(e.at(0).tableaux[3] != e.at(1).tableaux[3]);
    CHECK(e.at(0).tableaux[2] == e.at(1).tableaux[2]);
    CHECK_THROWS_AS(e.at(e.size()), std::out_of_range);
}

TEST_CASE("sparse polynomials") {
    const auto x = SparsePolynomial::variable(0), y = SparsePolynomial::variable(5);
    const auto p = (x + y) * (x - y);
    CHECK(p.degree() == 2);
    CHECK(p.term_count() == 2);
    CHECK(p.coefficient({0, 0}) == 1);
    CHECK(p.coefficient({5, 5}) == -1);
    CHECK(p.coefficient({0, 5}) == 0);
    CHECK(SparsePolynomial::unpack(SparsePolynomial::pack({80, 3, 17}), 3) == std::vector<int>{3, 17, 80});
    CHECK((p - p).is_zero());
    CHECK(scale(p, -2).coefficient({5, 5}) == 2);
    CHECK_THROWS_AS(x + p, std::invalid_argument);
    const SparsePolynomial huge(1, {{SparsePolynomial::pack({1}), INT64_MAX}});
    CHECK_THROWS_AS(huge + huge, std::overflow_error);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
    CHECK_THROWS_AS(SparsePolynomial::pack(std::vector<int>(10, 0)), std::invalid_argument);
}

TEST_CASE("expansion examples") {
    Filling one;
    for (auto& t : one.tableaux) t = Tableau(Cols{{0}});
    CHECK(expand_filling(one) == SparsePolynomial::variable(tensor_index(0, 0, 0, 0)));

    // ((3),(3),(111),(111)) gives 3! times the determinant of a 3x3 slice
    Filling f;
    f.tableaux = {Tableau::from_rows({{1, 2, 3}}), Tableau::from_rows({{1, 2, 3}}), Tableau::from_rows({{1}, {2}, {3}}),
                  Tableau::from_rows({{1}, {2}, {3}})};
    const auto p = expand_filling(f);
    CHECK(p == scale(slice_determinant({2, 3}, {0, 0}), 6));
    CHECK(p.term_count() == 6);

    // letter 1 twice in tableau 2
    Filling bad = f;
    bad.tableaux[1] = Tableau(Cols{{0}, {0}, {2}});
    CHECK_FALSE(bad.is_valid());
    CHECK_THROWS_AS(expand_filling(bad), std::invalid_argument);
}

TEST_CASE("expansion agrees with the brute-force oracle") {
    for (int d = 1; d <= 3; ++d)
        for (const auto& c : isotypic_catalog(d))
            for (const auto& fill : enumerate_fillings(c.shape, d < 3 ? 20 : 3)) {
                const auto want = brute_expand(fill);
                CHECK_MESSAGE(expand_filling(fill) == want, fill.to_string());
            }
}

TEST_CASE("shapes without invariants expand to zero") {
    const auto s = mp({3}, {3}, {3}, {1, 1, 1});
    REQUIRE(kronecker_multiplicity(s) == 0);
    for (const auto& fill : enumerate_fillings(s, 1000)) CHECK(expand_filling(fill).is_zero());
    const auto t = mp({2, 2}, {4}, {4}, {3, 1});
    REQUIRE(kronecker_multiplicity(t) == 0);
    for (const auto& fill : enumerate_fillings(t, 1000)) CHECK(expand_filling(fill).is_zero());
    CHECK(multiplicity_basis(t, 0, ModularField{}, 1).fillings.empty());
}

TEST_CASE("direct evaluation equals evaluation of the expansion") {
    const ModularField f;
    std::mt19937_64 rng(2);
    for (int d = 2; d <= 5; ++d) {
        const auto cat = isotypic_catalog(d);
        for (std::size_t i = 0; i < cat.size(); i += (d == 5 ? 5 : 1)) {
            const auto& c = cat[i];
            for (const auto& fill : enumerate_fillings(c.shape, 3)) {
                const auto p = expand_filling(fill);
                const FillingEvaluator ev(fill, f);
                for (int t = 0; t < 3; ++t) {
                    const auto q = fresh(f, rng);
                    CHECK(ev(q) == evaluate(p, f, q));
                }
            }
        }
    }
}

TEST_CASE("raising operators") {
    const auto q2111 = SparsePolynomial::variable(tensor_index(1, 0, 0, 0));
    const auto q1111 = SparsePolynomial::variable(tensor_index(0, 0, 0, 0));
    CHECK(raising_operator(q2111, 0, 0) == q1111);
    CHECK(raising_operator(q2111, 0, 1).is_zero());
    for (int m = 0; m < 4; ++m)
        for (int r = 0; r < 2; ++r) CHECK(raising_operator(q1111, m, r).is_zero());
    const auto sq = SparsePolynomial::variable(tensor_index(0, 2, 0, 0)) * SparsePolynomial::variable(tensor_index(1, 2, 0, 0));
    const auto r = raising_operator(sq, 1, 1);
    CHECK(r.coefficient({tensor_index(0, 1, 0, 0), tensor_index(1, 2, 0, 0)}) == 1);
    CHECK(r.coefficient({tensor_index(0, 2, 0, 0), tensor_index(1, 1, 0, 0)}) == 1);
    CHECK_THROWS_AS(raising_operator(q1111, 4, 0), std::invalid_argument);
    CHECK(is_highest_weight(q1111));
    CHECK_FALSE(is_highest_weight(q2111));
}

TEST_CASE("every basis polynomial up to degree 5 is a highest weight vector") {
    const ModularField f;
    for (int d = 1; d <= 5; ++d)
        for (const auto& c : isotypic_catalog(d)) {
            const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 17);
            REQUIRE(b.fillings.size() == c.ring_multiplicity);
            for (const auto& fill : b.fillings) {
                const auto p = expand_filling(fill);
                CHECK_FALSE(p.is_zero());
                CHECK_MESSAGE(has_weight(p, c.shape), fill.to_string());
                CHECK_MESSAGE(is_highest_weight(p), fill.to_string());
                CHECK(p.term_count() <= term_count_bound(fill));
            }
        }
}

TEST_CASE("selected bases stay independent at fresh tensors") {
    const ModularField f;
    std::mt19937_64 rng(99);
    for (int d = 2; d <= 5; ++d)
        for (const auto& c : isotypic_catalog(d)) {
            if (d == 5 && c.ring_multiplicity < 5) continue;
            const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 3);
            std::vector<ModularTensor> pts(c.ring_multiplicity + 4);
            for (auto& q : pts) q = fresh(f, rng);
            DenseMatrix<std::uint64_t> m(b.fillings.size(), pts.size());
            for (std::size_t i = 0; i < b.fillings.size(); ++i) {
                const FillingEvaluator ev(b.fillings[i], f);
                for (std::size_t j = 0; j < pts.size(); ++j) m(i, j) = ev(pts[j]);
            }
            CHECK_MESSAGE(rank(f, m) == c.ring_multiplicity, c.shape.to_string());
        }
}

TEST_CASE("all candidates together span exactly the multiplicity space") {
    const ModularField f;
    for (int d = 1; d <= 4; ++d)
        for (const auto& c : isotypic_catalog(d))
            CHECK_MESSAGE(candidate_span_rank(c.shape, f, 5) == c.ring_multiplicity, c.shape.to_string());
    for (const auto& c : isotypic_catalog(5))
        CHECK_MESSAGE(candidate_span_rank(c.shape, f, 5, 400) == c.ring_multiplicity, c.shape.to_string());
}

TEST_CASE("basis examples and budget") {
    const ModularField f;
    const auto s = mp({3}, {3}, {1, 1, 1}, {1, 1, 1});
    CHECK(multiplicity_basis(s, 1, f, 1).fillings.size() == 1);
    const auto big = mp({3, 1, 1}, {3, 1, 1}, {3, 1, 1}, {3, 1, 1});
    CHECK_THROWS_WITH_AS(multiplicity_basis(big, kronecker_multiplicity(big), f, 1, 3),
                         doctest::Contains("filling budget insufficient"), BudgetExhausted);
    // asking for more than exists exhausts any budget
    CHECK_THROWS_AS(multiplicity_basis(s, 2, f, 1), BudgetExhausted);
}

TEST_CASE("basis cache round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "qf-test-basis-cache";
    std::filesystem::remove_all(dir);
    const ModularField f;
    const auto s = mp({2, 2}, {2, 2}, {2, 1, 1}, {2, 1, 1});
    CHECK_FALSE(load_basis_cache(dir, s).has_value());
    const auto b = multiplicity_basis(s, kronecker_multiplicity(s), f, 4);
    const auto polys = basis_polynomials(b);
    store_basis_cache(dir, b, polys);
    const auto back = load_basis_cache(dir, s);
    REQUIRE(back.has_value());
    CHECK(back->first.fillings == b.fillings);
    CHECK(back->second == polys);
    CHECK_FALSE(load_basis_cache(dir, mp({4}, {4}, {4}, {4})).has_value());
    std::ofstream(dir / ("basis-" + s.key() + ".json")) << "{ not json";
    CHECK_FALSE(load_basis_cache(dir, s).has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("largest degree 7 multiplicity space") {
    const auto cat = isotypic_catalog(7);
    const auto it = std::max_element(cat.begin(), cat.end(), [](const auto& a, const auto& b) {
        return a.ring_multiplicity < b.ring_multiplicity;
    });
    REQUIRE(it->ring_multiplicity == 301);
    CHECK(it->shape == mp({4, 2, 1}, {4, 2, 1}, {4, 2, 1}, {4, 2, 1}));
    const auto b = multiplicity_basis(it->shape, 301, ModularField{}, 17);
    CHECK(b.fillings.size() == 301);
}
