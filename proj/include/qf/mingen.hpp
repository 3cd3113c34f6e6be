#pragma once

// Equations and generator bounds: the contraction cubics, the Pieri excess
// test between consecutive degrees, and box removal on fillings.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qf/catalog.hpp"
#include "qf/field.hpp"
#include "qf/hwv.hpp"
#include "qf/interpolation.hpp"

namespace qf {

/// Coefficient of x^alpha a^beta in det(sum_{k,l} Q(., ., k, l) x_k a_l), where
/// the two matrix modes are `pair` and x, a contract the other two modes in
/// increasing order.
struct ContractionCubic {
    std::array<int, 2> pair;        // matrix modes, 0-based, increasing
    std::array<int, 3> x_exponent;  // exponent vector of x
    std::array<int, 3> a_exponent;  // exponent vector of a
    SparsePolynomial poly;

    /// x_k^3 a_l^3 coefficients are determinants of 3x3 slices.
    bool is_slice_determinant() const;
};

struct ContractionCubicBasis {
    std::array<std::array<int, 2>, 6> pairs;
    std::array<std::vector<ContractionCubic>, 6> groups;  // 100 each

    std::vector<SparsePolynomial> all() const;
    std::size_t size() const;
    std::size_t slice_determinant_count() const;
};

ContractionCubicBasis contraction_cubics();

/// det of the 3x3 slice Q(i, j) with the two other modes fixed; `pair` are
/// the free modes, `fixed` the indices for the remaining two modes in order.
SparsePolynomial slice_determinant(std::array<int, 2> pair, std::array<int, 2> fixed);

/// Rank of the polynomials' values at the given points.
std::size_t evaluation_rank(const std::vector<SparsePolynomial>& polys, const std::vector<ModularTensor>& points,
                            const ModularField& f);

/// Exact test of p in span(basis) over Q, computed inside the weight space of p.
bool in_span_exact(const SparsePolynomial& p, const std::vector<SparsePolynomial>& basis);

struct ExcessEntry {
    MultiPartition shape;
    std::uint64_t ideal_multiplicity = 0;  // k in degree d
    std::uint64_t reachable = 0;           // multiplicity in I_{d-1} ⊗ V1*⊗V2*⊗V3*⊗V4*
    std::uint64_t excess = 0;
    int orbit_size = 0;
    std::uint64_t dimension = 0;           // orbit * excess * prod dims
    bool known = true;
};

struct ExcessReport {
    int degree = 0;
    std::vector<ExcessEntry> entries;  // every orbit representative of the degree-d report
    bool partial = false;              // some input component was not done

    std::uint64_t total_dimension() const;
    std::vector<ExcessEntry> positive() const;
};

ExcessReport excess_test(const DegreeReport& prev, const DegreeReport& curr);
nlohmann::json to_json(const ExcessReport& r);

enum class RemoveBoxVerdict { nonzero, zero, inapplicable };
std::string to_string(RemoveBoxVerdict v);

struct RemoveBoxResult {
    std::optional<Filling> smaller;
    RemoveBoxVerdict verdict = RemoveBoxVerdict::inapplicable;
};

/// Deletes the largest letter from all four tableaux. The letter must sit at
/// the bottom of a column whose removal leaves a partition shape; equal-height
/// columns are first moved so that the box is a corner, which does not change
/// the polynomial.
RemoveBoxResult remove_box_test(const Filling& f);

/// Young diagram containment mu_i ⊆ pi_i for all four factors.
bool contained_in(const MultiPartition& mu, const MultiPartition& pi);
/// Same, allowing any reordering of mu's factors.
bool contained_up_to_order(const MultiPartition& mu, const MultiPartition& pi);

}  // namespace qf
