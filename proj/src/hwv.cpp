#include "qf/hwv.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qf/characters.hpp"
#include "qf/matrix.hpp"
#include "qf/multiview.hpp"

namespace qf {

// ---- tableaux ---------------------------------------------------------------

Tableau::Tableau(std::vector<std::vector<int>> columns) : cols_(std::move(columns)) {
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        if (cols_[c].empty()) throw std::invalid_argument("Tableau: empty column");
        if (c > 0 && cols_[c].size() > cols_[c - 1].size())
            throw std::invalid_argument("Tableau: column heights must weakly decrease");
        for (std::size_t r = 1; r < cols_[c].size(); ++r)
            if (cols_[c][r] <= cols_[c][r - 1]) throw std::invalid_argument("Tableau: columns must strictly increase");
    }
}

Tableau Tableau::from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<int>> cols;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r > 0 && rows[r].size() > rows[r - 1].size())
            throw std::invalid_argument("Tableau::from_rows: row lengths must weakly decrease");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c >= cols.size()) cols.emplace_back();
            cols[c].push_back(rows[r][c] - 1);
        }
    }
    return Tableau(std::move(cols));
}

Partition Tableau::shape() const {
    std::vector<int> heights;
    for (const auto& c : cols_) heights.push_back(static_cast<int>(c.size()));
    if (heights.empty()) return Partition();
    return Partition(std::move(heights)).conjugate();
}

int Tableau::size() const {
    int n = 0;
    for (const auto& c : cols_) n += static_cast<int>(c.size());
    return n;
}

std::vector<std::vector<int>> Tableau::rows() const {
    std::vector<std::vector<int>> out;
    for (const auto& c : cols_)
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (r >= out.size()) out.emplace_back();
            out[r].push_back(c[r]);
        }
    return out;
}

std::string Tableau::to_string() const {
    std::ostringstream os;
    os << '[';
    const auto rs = rows();
    for (std::size_t r = 0; r < rs.size(); ++r) {
        if (r) os << '|';
        for (std::size_t c = 0; c < rs[r].size(); ++c) os << (c ? " " : "") << rs[r][c] + 1;
    }
    os << ']';
    return os.str();
}

MultiPartition Filling::shape() const {
    return MultiPartition(tableaux[0].shape(), tableaux[1].shape(), tableaux[2].shape(), tableaux[3].shape());
}

bool Filling::is_valid() const {
    const int d = degree();
    if (d > SparsePolynomial::kMaxDegree) return false;
    for (const auto& t : tableaux) {
        std::vector<int> seen(d, 0);
        if (t.size() != d) return false;
        for (const auto& c : t.columns())
            for (int s : c) {
                if (s < 0 || s >= d || seen[s]++) return false;
            }
    }
    return true;
}

std::string Filling::to_string() const {
    std::string s;
    for (const auto& t : tableaux) s += t.to_string();
    return s;
}

Tableau column_superstandard(const Partition& shape) {
    std::vector<std::vector<int>> cols;
    int next = 0;
    for (int h : shape.column_heights()) {
        cols.emplace_back();
        for (int r = 0; r < h; ++r) cols.back().push_back(next++);
    }
    return Tableau(std::move(cols));
}

namespace {

void column_strict_rec(const std::vector<int>& heights, std::size_t col, std::vector<int>& remaining,
                       std::vector<std::vector<int>>& current, std::vector<Tableau>& out) {
    if (col == heights.size()) {
        out.emplace_back(current);
        return;
    }
    const int h = heights[col];
    const int n = static_cast<int>(remaining.size());
    const bool tied = col > 0 && heights[col - 1] == h;
    std::vector<int> pick(h);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<int> column(h);
        for (int i = 0; i < h; ++i) column[i] = remaining[pick[i]];
        if (!tied || column[0] > current.back()[0]) {
            std::vector<int> rest;
            for (int i = 0, j = 0; i < n; ++i) {
                if (j < h && pick[j] == i)
                    ++j;
                else
                    rest.push_back(remaining[i]);
            }
            current.push_back(column);
            column_strict_rec(heights, col + 1, rest, current, out);
            current.pop_back();
        }
        int i = h - 1;
        while (i >= 0 && pick[i] == n - h + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < h; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

std::vector<Tableau> column_strict_tableaux(const Partition& shape) {
    std::vector<Tableau> out;
    const auto heights = shape.column_heights();
    if (heights.empty()) return {Tableau()};
    std::vector<int> letters(shape.size());
    std::iota(letters.begin(), letters.end(), 0);
    std::vector<std::vector<int>> current;
    column_strict_rec(heights, 0, letters, current, out);
    return out;
}

FillingEnumerator::FillingEnumerator(const MultiPartition& shape) : first_(column_superstandard(shape[0])) {
    total_ = 1;
    for (int i = 0; i < 3; ++i) {
        rest_[i] = column_strict_tableaux(shape[i + 1]);
        total_ *= rest_[i].size();
    }
}

Filling FillingEnumerator::at(std::uint64_t index) const {
    if (index >= total_) throw std::out_of_range("FillingEnumerator::at");
    Filling f;
    f.tableaux[0] = first_;
    for (int i = 2; i >= 0; --i) {
        f.tableaux[i + 1] = rest_[i][index % rest_[i].size()];
        index /= rest_[i].size();
    }
    return f;
}

std::vector<Filling> enumerate_fillings(const MultiPartition& shape, std::uint64_t budget) {
    FillingEnumerator e(shape);
    std::vector<Filling> out;
    for (std::uint64_t i = 0; i < e.size() && i < budget; ++i) out.push_back(e.at(i));
    return out;
}

// ---- polynomials ------------------------------------------------------------

SparsePolynomial::SparsePolynomial(int degree, std::vector<Term> terms) : degree_(degree) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (const auto& t : terms) {
        if (!terms_.empty() && terms_.back().first == t.first) {
            if (__builtin_add_overflow(terms_.back().second, t.second, &terms_.back().second))
                throw std::overflow_error("SparsePolynomial: coefficient overflow");
        } else {
            if (!terms_.empty() && terms_.back().second == 0) terms_.pop_back();
            terms_.push_back(t);
        }
    }
    if (!terms_.empty() && terms_.back().second == 0) terms_.pop_back();
}

SparsePolynomial SparsePolynomial::variable(int flat) { return SparsePolynomial(1, {{pack({flat}), 1}}); }

SparsePolynomial::Key SparsePolynomial::pack(std::vector<int> vars) {
    if (vars.size() > static_cast<std::size_t>(kMaxDegree)) throw std::invalid_argument("pack: degree above 9");
    std::sort(vars.begin(), vars.end());
    Key k = 0;
    for (int v : vars) k = (k << 7) | static_cast<Key>(v);
    return k;
}

std::vector<int> SparsePolynomial::unpack(Key key, int degree) {
    std::vector<int> vars(degree);
    for (int j = degree - 1; j >= 0; --j) {
        vars[j] = static_cast<int>(key & 127);
        key >>= 7;
    }
    return vars;
}

std::int64_t SparsePolynomial::coefficient(std::vector<int> vars) const {
    const Key k = pack(std::move(vars));
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key v) { return t.first < v; });
    return (it != terms_.end() && it->first == k) ? it->second : 0;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    const int d = a.degree() + b.degree();
    std::vector<SparsePolynomial::Term> terms;
    terms.reserve(a.term_count() * b.term_count());
    for (const auto& [ka, ca] : a.terms()) {
        auto va = SparsePolynomial::unpack(ka, a.degree());
        for (const auto& [kb, cb] : b.terms()) {
            auto v = va;
            auto vb = SparsePolynomial::unpack(kb, b.degree());
            v.insert(v.end(), vb.begin(), vb.end());
            std::int64_t c;
            if (__builtin_mul_overflow(ca, cb, &c)) throw std::overflow_error("SparsePolynomial: coefficient overflow");
            terms.emplace_back(SparsePolynomial::pack(std::move(v)), c);
        }
    }
    return SparsePolynomial(d, std::move(terms));
}

namespace {

SparsePolynomial combine(const SparsePolynomial& a, const SparsePolynomial& b, std::int64_t sb) {
    if (a.is_zero()) return scale(b, sb);
    if (b.is_zero()) return a;
    if (a.degree() != b.degree()) throw std::invalid_argument("SparsePolynomial: degrees differ");
    auto terms = a.terms();
    for (const auto& [k, c] : b.terms()) terms.emplace_back(k, sb * c);
    return SparsePolynomial(a.degree(), std::move(terms));
}

}  // namespace

SparsePolynomial operator+(const SparsePolynomial& a, const SparsePolynomial& b) { return combine(a, b, 1); }
SparsePolynomial operator-(const SparsePolynomial& a, const SparsePolynomial& b) { return combine(a, b, -1); }

SparsePolynomial scale(const SparsePolynomial& a, std::int64_t c) {
    auto terms = a.terms();
    for (auto& t : terms)
        if (__builtin_mul_overflow(t.second, c, &t.second)) throw std::overflow_error("SparsePolynomial: overflow");
    return SparsePolynomial(a.degree(), std::move(terms));
}

std::vector<ModeAssignment> mode_assignments(const Tableau& t) {
    std::vector<ModeAssignment> out{ModeAssignment{}};
    for (const auto& col : t.columns()) {
        const int k = static_cast<int>(col.size());
        if (k > 3) return {};
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::pair<std::vector<int>, int>> perms;
        do {
            int inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
            perms.emplace_back(perm, inv % 2 ? -1 : 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<ModeAssignment> next;
        next.reserve(out.size() * perms.size());
        for (const auto& a : out)
            for (const auto& [p, s] : perms) {
                ModeAssignment b = a;
                for (int i = 0; i < k; ++i) b.index[col[i]] = static_cast<std::uint8_t>(p[i]);
                b.sign *= s;
                next.push_back(b);
            }
        out = std::move(next);
    }
    return out;
}

SparsePolynomial expand_filling(const Filling& f) {
    if (!f.is_valid()) throw std::invalid_argument("expand_filling: invalid filling " + f.to_string());
    const int d = f.degree();
    std::array<std::vector<ModeAssignment>, 4> a;
    for (int m = 0; m < 4; ++m) {
        a[m] = mode_assignments(f.tableaux[m]);
        if (a[m].empty()) return SparsePolynomial(d);
    }
    std::vector<SparsePolynomial::Term> terms;
    terms.reserve(a[0].size() * a[1].size() * a[2].size() * a[3].size());
    std::array<int, SparsePolynomial::kMaxDegree> b12{}, b123{}, v{};
    for (const auto& a1 : a[0])
        for (const auto& a2 : a[1]) {
            for (int s = 0; s < d; ++s) b12[s] = a1.index[s] * 27 + a2.index[s] * 9;
            for (const auto& a3 : a[2]) {
                for (int s = 0; s < d; ++s) b123[s] = b12[s] + a3.index[s] * 3;
                const int sign = a1.sign * a2.sign * a3.sign;
                for (const auto& a4 : a[3]) {
                    for (int s = 0; s < d; ++s) v[s] = b123[s] + a4.index[s];
                    std::sort(v.begin(), v.begin() + d);
                    SparsePolynomial::Key k = 0;
                    for (int s = 0; s < d; ++s) k = (k << 7) | static_cast<SparsePolynomial::Key>(v[s]);
                    terms.emplace_back(k, sign * a4.sign);
                }
            }
        }
    return SparsePolynomial(d, std::move(terms));
}

std::uint64_t evaluate(const SparsePolynomial& p, const ModularField& f, const ModularTensor& q) {
    std::uint64_t acc = 0;
    const int d = p.degree();
    for (const auto& [k, c] : p.terms()) {
        std::uint64_t v = f.from_int(c);
        auto rest = k;
        for (int j = 0; j < d; ++j) {
            v = f.mul(v, q.entries[rest & 127]);
            rest >>= 7;
        }
        acc = f.add(acc, v);
    }
    return acc;
}

mpq_class evaluate(const SparsePolynomial& p, const QuadTensor<mpq_class>& q) {
    mpq_class acc = 0;
    const int d = p.degree();
    for (const auto& [k, c] : p.terms()) {
        mpq_class v = static_cast<long>(c);
        auto rest = k;
        for (int j = 0; j < d; ++j) {
            v *= q.entries[rest & 127];
            rest >>= 7;
        }
        acc += v;
    }
    return acc;
}

FillingEvaluator::FillingEvaluator(const Filling& fill, const ModularField& f) : f_(f), d_(fill.degree()) {
    if (!fill.is_valid()) throw std::invalid_argument("FillingEvaluator: invalid filling " + fill.to_string());
    for (int m = 0; m < 3; ++m) assign_[m] = mode_assignments(fill.tableaux[m]);
    last_columns_ = fill.tableaux[3].columns();
    for (const auto& c : last_columns_)
        if (c.size() > 3) assign_[0].clear();
}

std::uint64_t FillingEvaluator::operator()(const ModularTensor& q) const {
    const auto& f = f_;
    const auto* e = q.entries.data();
    std::uint64_t acc = 0;
    std::array<int, SparsePolynomial::kMaxDegree> b12{}, b{};
    for (const auto& a1 : assign_[0])
        for (const auto& a2 : assign_[1]) {
            for (int s = 0; s < d_; ++s) b12[s] = a1.index[s] * 27 + a2.index[s] * 9;
            for (const auto& a3 : assign_[2]) {
                for (int s = 0; s < d_; ++s) b[s] = b12[s] + a3.index[s] * 3;
                std::uint64_t prod = 1;
                for (const auto& col : last_columns_) {
                    std::uint64_t det;
                    switch (col.size()) {
                        case 1:
                            det = e[b[col[0]]];
                            break;
                        case 2: {
                            const auto* u = e + b[col[0]];
                            const auto* w = e + b[col[1]];
                            det = f.sub(f.mul(u[0], w[1]), f.mul(u[1], w[0]));
                            break;
                        }
                        default: {
                            const auto* u = e + b[col[0]];
                            const auto* v = e + b[col[1]];
                            const auto* w = e + b[col[2]];
                            det = f.add(f.mul(u[0], f.sub(f.mul(v[1], w[2]), f.mul(v[2], w[1]))),
                                        f.add(f.mul(u[1], f.sub(f.mul(v[2], w[0]), f.mul(v[0], w[2]))),
                                              f.mul(u[2], f.sub(f.mul(v[0], w[1]), f.mul(v[1], w[0])))));
                        }
                    }
                    prod = f.mul(prod, det);
                    if (prod == 0) break;
                }
                acc = (a1.sign * a2.sign * a3.sign > 0) ? f.add(acc, prod) : f.sub(acc, prod);
            }
        }
    return acc;
}

SparsePolynomial raising_operator(const SparsePolynomial& p, int mode, int row) {
    if (mode < 0 || mode > 3 || row < 0 || row > 1) throw std::invalid_argument("raising_operator: bad mode or row");
    const int d = p.degree();
    std::vector<SparsePolynomial::Term> terms;
    for (const auto& [k, c] : p.terms()) {
        const auto vars = SparsePolynomial::unpack(k, d);
        for (int j = 0; j < d; ++j) {
            if (mode_index(vars[j], mode) != row + 1) continue;
            auto w = vars;
            w[j] = with_mode_index(w[j], mode, row);
            terms.emplace_back(SparsePolynomial::pack(std::move(w)), c);
        }
    }
    return SparsePolynomial(d, std::move(terms));
}

bool has_weight(const SparsePolynomial& p, const MultiPartition& shape) {
    const int d = p.degree();
    if (d != shape.degree()) return false;
    for (const auto& [k, c] : p.terms()) {
        int count[4][3] = {};
        for (int v : SparsePolynomial::unpack(k, d))
            for (int m = 0; m < 4; ++m) ++count[m][mode_index(v, m)];
        for (int m = 0; m < 4; ++m)
            for (int r = 0; r < 3; ++r)
                if (count[m][r] != shape[m][r]) return false;
    }
    return true;
}

bool is_highest_weight(const SparsePolynomial& p) {
    for (int m = 0; m < 4; ++m)
        for (int r = 0; r < 2; ++r)
            if (!raising_operator(p, m, r).is_zero()) return false;
    return true;
}

std::uint64_t term_count_bound(const Filling& f) {
    std::uint64_t b = 1;
    for (const auto& t : f.tableaux)
        for (const auto& c : t.columns())
            for (std::size_t i = 2; i <= c.size(); ++i) b *= i;
    return b;
}

// ---- multiplicity bases -----------------------------------------------------

namespace {

std::vector<ModularTensor> generic_points(const ModularField& f, std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<ModularTensor> pts(n);
    for (auto& p : pts) p = random_tensor(f, rng);
    return pts;
}

std::vector<std::uint64_t> evaluate_filling_at(const Filling& fill, const ModularField& f,
                                               const std::vector<ModularTensor>& pts) {
    FillingEvaluator ev(fill, f);
    std::vector<std::uint64_t> row(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) row[i] = ev(pts[i]);
    return row;
}

bool all_zero(const std::vector<std::uint64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

// Visits 0..n-1 with a golden-ratio stride. Neighbours in the lexicographic
// stream differ in one tableau only and tend to be dependent.
struct StrideOrder {
    std::uint64_t n, step;

    explicit StrideOrder(std::uint64_t n_) : n(n_), step(1) {
        if (n < 3) return;
        step = static_cast<std::uint64_t>(static_cast<double>(n) * 0.6180339887498949);
        while (std::gcd(step, n) != 1) ++step;
    }
    std::uint64_t operator[](std::uint64_t i) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(i) * step % n);
    }
};

}  // namespace

MultiplicityBasis multiplicity_basis(const MultiPartition& shape, std::uint64_t m, const ModularField& f,
                                     std::uint64_t seed, std::uint64_t budget) {
    MultiplicityBasis out{shape, {}, 0};
    if (m == 0) return out;
    const auto pts = generic_points(f, seed, 2 * m + 8);
    IncrementalRowBasis<ModularField> rb(f, pts.size());
    FillingEnumerator e(shape);
    const StrideOrder order(e.size());
    for (std::uint64_t i = 0; i < e.size() && i < budget; ++i) {
        auto fill = e.at(order[i]);
        ++out.candidates_examined;
        auto row = evaluate_filling_at(fill, f, pts);
        if (all_zero(row)) continue;
        if (rb.insert(std::move(row))) {
            out.fillings.push_back(std::move(fill));
            if (rb.rank() == m) return out;
        }
    }
    throw BudgetExhausted("filling budget insufficient for " + shape.to_string() + ": rank " +
                          std::to_string(rb.rank()) + " of " + std::to_string(m) + " after " +
                          std::to_string(out.candidates_examined) + " candidates");
}

std::uint64_t candidate_span_rank(const MultiPartition& shape, const ModularField& f, std::uint64_t seed,
                                  std::uint64_t budget) {
    const auto bound = kronecker_multiplicity(shape);
    const auto pts = generic_points(f, seed, 2 * bound + 16);
    IncrementalRowBasis<ModularField> rb(f, pts.size());
    FillingEnumerator e(shape);
    const StrideOrder order(e.size());
    for (std::uint64_t i = 0; i < e.size() && i < budget; ++i) {
        auto row = evaluate_filling_at(e.at(order[i]), f, pts);
        if (!all_zero(row)) rb.insert(std::move(row));
        if (rb.rank() == pts.size()) break;
    }
    return rb.rank();
}

std::vector<SparsePolynomial> basis_polynomials(const MultiplicityBasis& basis) {
    std::vector<SparsePolynomial> out;
    out.reserve(basis.fillings.size());
    for (const auto& fill : basis.fillings) out.push_back(expand_filling(fill));
    return out;
}

// ---- cache ------------------------------------------------------------------

namespace {

nlohmann::json tableau_json(const Tableau& t) { return t.columns(); }

std::filesystem::path cache_file(const std::filesystem::path& dir, const MultiPartition& shape) {
    return dir / ("basis-" + shape.key() + ".json");
}

}  // namespace

void store_basis_cache(const std::filesystem::path& dir, const MultiplicityBasis& basis,
                       const std::vector<SparsePolynomial>& polys) {
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["shape"] = basis.shape.key();
    j["candidates_examined"] = basis.candidates_examined;
    j["fillings"] = nlohmann::json::array();
    for (const auto& fill : basis.fillings) {
        nlohmann::json fj = nlohmann::json::array();
        for (const auto& t : fill.tableaux) fj.push_back(tableau_json(t));
        j["fillings"].push_back(fj);
    }
    j["polynomials"] = nlohmann::json::array();
    for (const auto& p : polys) {
        nlohmann::json pj = nlohmann::json::array();
        for (const auto& [k, c] : p.terms()) pj.push_back({{"monomial", SparsePolynomial::unpack(k, p.degree())}, {"coefficient", c}});
        j["polynomials"].push_back(pj);
    }
    const auto path = cache_file(dir, basis.shape);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp);
        os << j.dump();
        if (!os) throw std::runtime_error("store_basis_cache: cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::pair<MultiplicityBasis, std::vector<SparsePolynomial>>> load_basis_cache(
    const std::filesystem::path& dir, const MultiPartition& shape) {
    std::ifstream is(cache_file(dir, shape));
    if (!is) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(is);
        if (j.at("shape").get<std::string>() != shape.key()) return std::nullopt;
        MultiplicityBasis b{shape, {}, j.at("candidates_examined").get<std::uint64_t>()};
        for (const auto& fj : j.at("fillings")) {
            Filling fill;
            for (int m = 0; m < 4; ++m) fill.tableaux[m] = Tableau(fj.at(m).get<std::vector<std::vector<int>>>());
            if (!fill.is_valid() || fill.shape() != shape) return std::nullopt;
            b.fillings.push_back(std::move(fill));
        }
        std::vector<SparsePolynomial> polys;
        for (const auto& pj : j.at("polynomials")) {
            std::vector<SparsePolynomial::Term> terms;
            for (const auto& t : pj)
                terms.emplace_back(SparsePolynomial::pack(t.at("monomial").get<std::vector<int>>()),
                                   t.at("coefficient").get<std::int64_t>());
            polys.emplace_back(shape.degree(), std::move(terms));
        }
        if (polys.size() != b.fillings.size()) return std::nullopt;
        return std::make_pair(std::move(b), std::move(polys));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace qf
