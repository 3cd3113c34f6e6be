#pragma once

// Highest weight vectors from tableau fillings.
//
// A filling is four tableaux on the letters 0..d-1 (printed 1-based). Each
// column with letters s_1 < ... < s_k contributes an alternating sum over the
// assignments s_a -> coordinate sigma(a); per letter, the four chosen
// coordinates name one variable Q_{ijkl}.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qf/field.hpp"
#include "qf/partition.hpp"
#include "qf/tensor.hpp"

namespace qf {

class Tableau {
public:
    Tableau() = default;
    /// Columns left to right, each listed top to bottom; letters 0-based.
    /// Throws std::invalid_argument if columns are not strictly increasing or
    /// heights are not weakly decreasing.
    explicit Tableau(std::vector<std::vector<int>> columns);
    /// Rows top to bottom with letters 1-based, the usual way of writing one.
    static Tableau from_rows(const std::vector<std::vector<int>>& rows);

    const std::vector<std::vector<int>>& columns() const noexcept { return cols_; }
    Partition shape() const;
    int size() const;
    std::vector<std::vector<int>> rows() const;  // 0-based letters
    std::string to_string() const;               // rows, 1-based, e.g. "[1 2 3|4 5]"

    bool operator==(const Tableau&) const = default;
    auto operator<=>(const Tableau&) const = default;

private:
    std::vector<std::vector<int>> cols_;
};

struct Filling {
    std::array<Tableau, 4> tableaux;

    int degree() const { return tableaux[0].size(); }
    MultiPartition shape() const;
    /// True if each tableau uses every letter 0..d-1 exactly once.
    bool is_valid() const;
    std::string to_string() const;

    bool operator==(const Filling&) const = default;
};

/// Letters fill the columns top to bottom, left to right.
Tableau column_superstandard(const Partition& shape);

/// Column-strict tableaux of the given shape, one per unordered choice of
/// column contents (equal-height columns sorted by their top letter, since
/// swapping them leaves the polynomial unchanged), in lexicographic order of
/// the column reading word.
std::vector<Tableau> column_strict_tableaux(const Partition& shape);

/// Candidate stream: tableau 1 is column superstandard, tableaux 2..4 run
/// over column_strict_tableaux with tableau 4 varying fastest.
class FillingEnumerator {
public:
    explicit FillingEnumerator(const MultiPartition& shape);

    std::uint64_t size() const noexcept { return total_; }
    Filling at(std::uint64_t index) const;

private:
    Tableau first_;
    std::array<std::vector<Tableau>, 3> rest_;
    std::uint64_t total_ = 0;
};

std::vector<Filling> enumerate_fillings(const MultiPartition& shape, std::uint64_t budget);

/// A homogeneous polynomial in the 81 variables with integer coefficients.
/// A monomial is the sorted list of its variables (with repetition), packed
/// 7 bits per variable, so degrees up to 9 fit in one word.
class SparsePolynomial {
public:
    using Key = std::uint64_t;
    using Term = std::pair<Key, std::int64_t>;

    static constexpr int kMaxDegree = 9;

    SparsePolynomial() = default;
    explicit SparsePolynomial(int degree) : degree_(degree) {}
    /// Sorts and merges; drops zero coefficients.
    SparsePolynomial(int degree, std::vector<Term> terms);

    static SparsePolynomial variable(int flat);

    int degree() const noexcept { return degree_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    static Key pack(std::vector<int> vars);  // vars need not be sorted
    static std::vector<int> unpack(Key key, int degree);

    /// Coefficient of the monomial with the given variables.
    std::int64_t coefficient(std::vector<int> vars) const;

    bool operator==(const SparsePolynomial&) const = default;

private:
    int degree_ = 0;
    std::vector<Term> terms_;
};

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
SparsePolynomial operator+(const SparsePolynomial& a, const SparsePolynomial& b);
SparsePolynomial operator-(const SparsePolynomial& a, const SparsePolynomial& b);
SparsePolynomial scale(const SparsePolynomial& a, std::int64_t c);

/// Every signed assignment of coordinates to letters for one tableau.
struct ModeAssignment {
    std::array<std::uint8_t, SparsePolynomial::kMaxDegree> index{};
    int sign = 1;
};
std::vector<ModeAssignment> mode_assignments(const Tableau& t);

SparsePolynomial expand_filling(const Filling& f);

std::uint64_t evaluate(const SparsePolynomial& p, const ModularField& f, const ModularTensor& q);
mpq_class evaluate(const SparsePolynomial& p, const QuadTensor<mpq_class>& q);

/// Value of expand_filling(fill) at q without expanding: tableaux 1..3 are
/// summed over, tableau 4 contracts to a product of column determinants.
class FillingEvaluator {
public:
    FillingEvaluator(const Filling& fill, const ModularField& f);
    std::uint64_t operator()(const ModularTensor& q) const;

private:
    ModularField f_;
    int d_;
    std::array<std::vector<ModeAssignment>, 3> assign_;
    std::vector<std::vector<int>> last_columns_;
};

/// E^{(mode)}_{row,row+1}: replaces a mode index row+1 by row, by the
/// product rule. mode in 0..3, row in 0..1.
SparsePolynomial raising_operator(const SparsePolynomial& p, int mode, int row);

/// True if every monomial has, in each mode m, exactly shape[m][r] variables
/// with mode-m index r.
bool has_weight(const SparsePolynomial& p, const MultiPartition& shape);

/// True if all eight raising operators kill p.
bool is_highest_weight(const SparsePolynomial& p);

/// Upper bound prod over columns of (height)! on the number of monomials.
std::uint64_t term_count_bound(const Filling& f);

struct MultiplicityBasis {
    MultiPartition shape;
    std::vector<Filling> fillings;
    std::uint64_t candidates_examined = 0;
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Greedy selection of m independent candidates, judged by their values at
/// 2m+8 uniform random tensors. The candidate stream is visited with a fixed
/// stride coprime to its length, so the first `budget` visits are spread over
/// all of it. Throws BudgetExhausted ("filling budget
/// insufficient") if the candidates run out first.
MultiplicityBasis multiplicity_basis(const MultiPartition& shape, std::uint64_t m, const ModularField& f,
                                     std::uint64_t seed, std::uint64_t budget = UINT64_MAX);

/// Rank reached by all candidates (budget-limited) at fresh generic tensors.
std::uint64_t candidate_span_rank(const MultiPartition& shape, const ModularField& f, std::uint64_t seed,
                                  std::uint64_t budget = UINT64_MAX);

std::vector<SparsePolynomial> basis_polynomials(const MultiplicityBasis& basis);

/// Cache of expanded bases, one JSON file per shape.
void store_basis_cache(const std::filesystem::path& dir, const MultiplicityBasis& basis,
                       const std::vector<SparsePolynomial>& polys);
std::optional<std::pair<MultiplicityBasis, std::vector<SparsePolynomial>>> load_basis_cache(
    const std::filesystem::path& dir, const MultiPartition& shape);

}  // namespace qf
