#include "qf/mingen.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qf/matrix.hpp"

namespace qf {

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::array<int, 2> complement(std::array<int, 2> pair) {
    std::array<int, 2> out{};
    int n = 0;
    for (int m = 0; m < 4; ++m)
        if (m != pair[0] && m != pair[1]) out[n++] = m;
    return out;
}

int flat_of(std::array<int, 2> pair, std::array<int, 2> other, int i, int j, int k, int l) {
    std::array<int, 4> idx{};
    idx[pair[0]] = i;
    idx[pair[1]] = j;
    idx[other[0]] = k;
    idx[other[1]] = l;
    return tensor_index(idx[0], idx[1], idx[2], idx[3]);
}

constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
constexpr std::array<int, 6> kPermSign{1, -1, -1, 1, 1, -1};

}  // namespace

bool ContractionCubic::is_slice_determinant() const {
    auto pure = [](const std::array<int, 3>& e) { return std::count(e.begin(), e.end(), 3) == 1; };
    return pure(x_exponent) && pure(a_exponent);
}

std::vector<SparsePolynomial> ContractionCubicBasis::all() const {
    std::vector<SparsePolynomial> out;
    for (const auto& g : groups)
        for (const auto& c : g) out.push_back(c.poly);
    return out;
}

std::size_t ContractionCubicBasis::size() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
}

std::size_t ContractionCubicBasis::slice_determinant_count() const {
    std::size_t n = 0;
    for (const auto& g : groups)
        for (const auto& c : g) n += c.is_slice_determinant();
    return n;
}

ContractionCubicBasis contraction_cubics() {
    ContractionCubicBasis basis;
    for (int p = 0; p < 6; ++p) {
        const auto pair = kPairs[p];
        const auto other = complement(pair);
        basis.pairs[p] = pair;
        // (x exponents, a exponents) -> terms
        std::map<std::pair<std::array<int, 3>, std::array<int, 3>>, std::vector<SparsePolynomial::Term>> acc;
        for (int s = 0; s < 6; ++s)
            for (int code = 0; code < 729; ++code) {
                int c = code;
                std::array<int, 3> ks{}, ls{};
                for (int i = 0; i < 3; ++i) {
                    ks[i] = c % 3;
                    c /= 3;
                    ls[i] = c % 3;
                    c /= 3;
                }
                std::array<int, 3> xe{}, ae{};
                std::vector<int> vars(3);
                for (int i = 0; i < 3; ++i) {
                    ++xe[ks[i]];
                    ++ae[ls[i]];
                    vars[i] = flat_of(pair, other, i, kPerms[s][i], ks[i], ls[i]);
                }
                acc[{xe, ae}].emplace_back(SparsePolynomial::pack(vars), kPermSign[s]);
            }
        for (auto& [exps, terms] : acc) {
            ContractionCubic cc{pair, exps.first, exps.second, SparsePolynomial(3, std::move(terms))};
            basis.groups[p].push_back(std::move(cc));
        }
    }
    return basis;
}

SparsePolynomial slice_determinant(std::array<int, 2> pair, std::array<int, 2> fixed) {
    const auto other = complement(pair);
    std::vector<SparsePolynomial::Term> terms;
    for (int s = 0; s < 6; ++s) {
        std::vector<int> vars(3);
        for (int i = 0; i < 3; ++i) vars[i] = flat_of(pair, other, i, kPerms[s][i], fixed[0], fixed[1]);
        terms.emplace_back(SparsePolynomial::pack(vars), kPermSign[s]);
    }
    return SparsePolynomial(3, std::move(terms));
}

std::size_t evaluation_rank(const std::vector<SparsePolynomial>& polys, const std::vector<ModularTensor>& points,
                            const ModularField& f) {
    DenseMatrix<std::uint64_t> m(polys.size(), points.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) m(i, j) = evaluate(polys[i], f, points[j]);
    return rank(f, std::move(m));
}

namespace {

std::array<int, 12> monomial_weight(SparsePolynomial::Key k, int d) {
    std::array<int, 12> w{};
    for (int v : SparsePolynomial::unpack(k, d))
        for (int m = 0; m < 4; ++m) ++w[3 * m + mode_index(v, m)];
    return w;
}

}  // namespace

bool in_span_exact(const SparsePolynomial& p, const std::vector<SparsePolynomial>& basis) {
    if (p.is_zero()) return true;
    const int d = p.degree();
    const auto w = monomial_weight(p.terms().front().first, d);
    std::vector<const SparsePolynomial*> rows;
    for (const auto& b : basis) {
        if (b.is_zero()) continue;
        if (b.degree() != d) throw std::invalid_argument("in_span_exact: degrees differ");
        bool same = true, mixed = false;
        const auto w0 = monomial_weight(b.terms().front().first, d);
        for (const auto& [k, c] : b.terms())
            if (monomial_weight(k, d) != w0) mixed = true;
        if (mixed) throw std::invalid_argument("in_span_exact: basis element is not a weight vector");
        same = (w0 == w);
        if (same) rows.push_back(&b);
    }
    std::map<SparsePolynomial::Key, std::size_t> col;
    for (const auto* r : rows)
        for (const auto& [k, c] : r->terms()) col.emplace(k, 0);
    for (const auto& [k, c] : p.terms()) col.emplace(k, 0);
    std::size_t n = 0;
    for (auto& [k, idx] : col) idx = n++;
    DenseMatrix<mpq_class> m(rows.size() + 1, n, mpq_class(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, c] : rows[i]->terms()) m(i, col[k]) = static_cast<long>(c);
    const RationalField q;
    DenseMatrix<mpq_class> base(rows.size(), n, mpq_class(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) base(i, j) = m(i, j);
    for (const auto& [k, c] : p.terms()) m(rows.size(), col[k]) = static_cast<long>(c);
    return rank(q, std::move(m)) == rank(q, std::move(base));
}

// ---- excess -----------------------------------------------------------------

std::uint64_t ExcessReport::total_dimension() const {
    std::uint64_t t = 0;
    for (const auto& e : entries)
        if (e.known) t += e.dimension;
    return t;
}

std::vector<ExcessEntry> ExcessReport::positive() const {
    std::vector<ExcessEntry> out;
    for (const auto& e : entries)
        if (e.known && e.excess > 0) out.push_back(e);
    return out;
}

ExcessReport excess_test(const DegreeReport& prev, const DegreeReport& curr) {
    if (prev.degree + 1 != curr.degree) throw std::invalid_argument("excess_test: degrees are not consecutive");
    ExcessReport out;
    out.degree = curr.degree;
    std::vector<std::pair<MultiPartition, std::uint64_t>> reps;
    for (const auto& c : prev.components) {
        if (c.status != ComponentStatus::done) {
            out.partial = true;
            continue;
        }
        if (c.ideal_multiplicity > 0) reps.emplace_back(c.shape, c.ideal_multiplicity);
    }
    const auto grown = tensor_with_vector_reps(expand_orbits(reps));
    for (const auto& c : curr.components) {
        ExcessEntry e;
        e.shape = c.shape;
        e.orbit_size = c.orbit_size;
        if (auto it = grown.find(c.shape); it != grown.end()) e.reachable = it->second;
        if (c.status != ComponentStatus::done) {
            e.known = false;
            out.partial = true;
        } else {
            e.ideal_multiplicity = c.ideal_multiplicity;
            e.excess = e.ideal_multiplicity > e.reachable ? e.ideal_multiplicity - e.reachable : 0;
            e.dimension = module_dimension(c.shape, e.excess);
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

nlohmann::json to_json(const ExcessReport& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : e.shape.parts()) parts.push_back(p.parts());
        nlohmann::json j{{"partitions", parts},
                         {"reachable", e.reachable},
                         {"orbit", e.orbit_size},
                         {"status", e.known ? "done" : "unknown"}};
        if (e.known) {
            j["k"] = e.ideal_multiplicity;
            j["excess"] = e.excess;
            j["dimension"] = e.dimension;
        }
        entries.push_back(j);
    }
    return {{"degree", r.degree},
            {"partial", r.partial},
            {"entries", entries},
            {"necessary_generator_dimension", r.total_dimension()},
            {"bound", r.partial ? "partial lower bound" : "lower bound"}};
}

// ---- box removal ------------------------------------------------------------

std::string to_string(RemoveBoxVerdict v) {
    switch (v) {
        case RemoveBoxVerdict::nonzero:
            return "nonzero";
        case RemoveBoxVerdict::zero:
            return "zero";
        case RemoveBoxVerdict::inapplicable:
            return "inapplicable";
    }
    return "inapplicable";
}

RemoveBoxResult remove_box_test(const Filling& f) {
    RemoveBoxResult out;
    const int d = f.degree();
    if (d < 2 || !f.is_valid()) return out;
    const int last = d - 1;
    Filling g;
    for (int m = 0; m < 4; ++m) {
        auto cols = f.tableaux[m].columns();
        std::size_t c = 0;
        while (c < cols.size() && std::find(cols[c].begin(), cols[c].end(), last) == cols[c].end()) ++c;
        if (c == cols.size() || cols[c].back() != last) return out;
        std::size_t end = c;
        while (end + 1 < cols.size() && cols[end + 1].size() == cols[c].size()) ++end;
        std::rotate(cols.begin() + c, cols.begin() + c + 1, cols.begin() + end + 1);
        cols[end].pop_back();
        if (cols[end].empty()) cols.erase(cols.begin() + end);
        try {
            g.tableaux[m] = Tableau(std::move(cols));
        } catch (const std::invalid_argument&) {
            return out;
        }
    }
    out.verdict = expand_filling(g).is_zero() ? RemoveBoxVerdict::zero : RemoveBoxVerdict::nonzero;
    out.smaller = std::move(g);
    return out;
}

bool contained_in(const MultiPartition& mu, const MultiPartition& pi) {
    for (int i = 0; i < 4; ++i) {
        if (mu[i].rows() > pi[i].rows()) return false;
        for (int r = 0; r < mu[i].rows(); ++r)
            if (mu[i][r] > pi[i][r]) return false;
    }
    return true;
}

bool contained_up_to_order(const MultiPartition& mu, const MultiPartition& pi) {
    for (const auto& m : mu.orbit())
        if (contained_in(m, pi)) return true;
    return false;
}

}  // namespace qf
