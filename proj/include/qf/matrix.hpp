#pragma once

// Dense exact linear algebra: rank, reduced row echelon form, kernels.
//
// Pivoting always takes the first nonzero entry in column order, so results are
// reproducible bit for bit.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qf/field.hpp"

namespace qf {

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Field F>
DenseMatrix<typename F::value_type> identity_matrix(const F& f, std::size_t n) {
    DenseMatrix<typename F::value_type> m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& m) {
    DenseMatrix<T> t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
    return t;
}

template <Field F>
DenseMatrix<typename F::value_type> multiply(const F& f, const DenseMatrix<typename F::value_type>& a,
                                             const DenseMatrix<typename F::value_type>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    DenseMatrix<typename F::value_type> out(a.rows(), b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

template <Field F>
bool is_zero_matrix(const F& f, const DenseMatrix<typename F::value_type>& m) {
    for (const auto& v : m.data())
        if (!f.is_zero(v)) return false;
    return true;
}

template <class T>
struct EchelonForm {
    DenseMatrix<T> reduced;            // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <Field F>
EchelonForm<typename F::value_type> rref(const F& f, DenseMatrix<typename F::value_type> m) {
    using T = typename F::value_type;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const T inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            const T factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination (no back substitution).
template <Field F>
std::size_t rank(const F& f, DenseMatrix<typename F::value_type> m) {
    using T = typename F::value_type;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const T inv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (f.is_zero(m(i, c))) continue;
            const T factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

/// Fraction-free (Bareiss) rank over the rationals: rows are cleared of
/// denominators, then eliminated in Z with exact divisions.
std::size_t rank(const RationalField& f, DenseMatrix<mpq_class> m);

/// Columns of the result form a basis of the right null space of m.
template <Field F>
DenseMatrix<typename F::value_type> kernel_basis(const F& f, const DenseMatrix<typename F::value_type>& m) {
    auto ech = rref(f, m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    DenseMatrix<typename F::value_type> k(n, free_cols.size(), f.zero());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const std::size_t fc = free_cols[j];
        k(fc, j) = f.one();
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) k(ech.pivots[i], j) = f.neg(ech.reduced(i, fc));
    }
    return k;
}

/// Row space built one vector at a time; used wherever a rank is grown
/// greedily (basis extraction, evaluation matrices).
template <Field F>
class IncrementalRowBasis {
public:
    using T = typename F::value_type;

    IncrementalRowBasis(F field, std::size_t width) : f_(std::move(field)), width_(width) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t width() const noexcept { return width_; }

    /// Reduces v against the basis; if something survives it is added and the
    /// call returns true.
    bool insert(std::vector<T> v) {
        if (v.size() != width_) throw std::invalid_argument("IncrementalRowBasis: width mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t pc = pivots_[i];
            if (f_.is_zero(v[pc])) continue;
            const T factor = v[pc];
            const auto& row = rows_[i];
            for (std::size_t j = pc; j < width_; ++j)
                if (!f_.is_zero(row[j])) v[j] = f_.sub(v[j], f_.mul(factor, row[j]));
        }
        std::size_t pc = 0;
        while (pc < width_ && f_.is_zero(v[pc])) ++pc;
        if (pc == width_) return false;
        const T inv = f_.inv(v[pc]);
        for (std::size_t j = pc; j < width_; ++j) v[j] = f_.mul(v[j], inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(pc);
        return true;
    }

private:
    F f_;
    std::size_t width_;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Determinant by elimination over a field.
template <Field F>
typename F::value_type determinant(const F& f, DenseMatrix<typename F::value_type> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    using T = typename F::value_type;
    T det = f.one();
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(m(p, c))) ++p;
        if (p == n) return f.zero();
        if (p != c) {
            m.swap_rows(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        const T inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c))) continue;
            const T factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

}  // namespace qf
