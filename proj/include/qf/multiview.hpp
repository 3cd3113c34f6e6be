#pragma once

// Camera matrices and the multi-focal tensors cut out of their stacked 4x3n
// matrix M = (A_1^T | A_2^T | ... | A_n^T) by maximal minors.
//
// Sign convention: a minor lists its columns block by block (block 1 first),
// ascending within a block. Column i of A_j^T is row i of A_j.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qf/field.hpp"
#include "qf/matrix.hpp"
#include "qf/tensor.hpp"

namespace qf {

class CameraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Mat3 = std::array<Vec3<T>, 3>;

/// A 3x4 camera matrix A = (B | x).
template <class T>
struct Camera {
    std::array<Vec4<T>, 3> rows{};

    const Vec4<T>& row(int r) const { return rows[r]; }
    bool operator==(const Camera&) const = default;
};

/// 27 minors T_{i,j,{k,l}}: one column from each of blocks 1 and 2, two from block 3.
template <class T>
struct TrifocalTensor {
    // raw[i][j][q] is the minor whose block-3 columns are the complement of q.
    std::array<std::array<std::array<T, 3>, 3>, 3> raw{};
};

/// The two-block minors F_{{i,j},{k,l}}.
template <class T>
struct FundamentalMatrix {
    // raw[p][q]: block-1 columns complement of p, block-2 columns complement of q.
    Mat3<T> raw{};
};

/// S_{p,{1,2,3}}: one column of block 1, all three of block 2.
template <class T>
struct Epipole {
    Vec3<T> raw{};
};

namespace detail {

inline constexpr std::array<std::array<int, 2>, 3> kComplementPair{{{1, 2}, {0, 2}, {0, 1}}};

template <Field F>
typename F::value_type det4(const F& f, const std::array<Vec4<typename F::value_type>, 4>& cols) {
    using T = typename F::value_type;
    // Expansion along the first column of 2x2 minors (Laplace on rows 0,1).
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return f.sub(f.mul(cols[c0][r0], cols[c1][r1]), f.mul(cols[c1][r0], cols[c0][r1]));
    };
    static constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    T det = f.zero();
    for (int a = 0; a < 6; ++a) {
        const auto [c0, c1] = pairs[a];
        const auto [d0, d1] = pairs[5 - a];
        // sign of the column permutation (c0, c1, d0, d1)
        const int inversions = (c0 > d0) + (c0 > d1) + (c1 > d0) + (c1 > d1);
        T term = f.mul(minor2(0, 1, c0, c1), minor2(2, 3, d0, d1));
        det = (inversions % 2 == 0) ? f.add(det, term) : f.sub(det, term);
    }
    return det;
}

template <Field F>
void require_full_rank(const F& f, const Camera<typename F::value_type>& a, const char* what) {
    DenseMatrix<typename F::value_type> m(3, 4);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = a.rows[r][c];
    if (rank(f, m) != 3) throw CameraError(std::string(what) + ": camera matrix is rank deficient");
}

}  // namespace detail

template <Field F>
bool is_full_rank(const F& f, const Camera<typename F::value_type>& a) {
    DenseMatrix<typename F::value_type> m(3, 4);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = a.rows[r][c];
    return rank(f, m) == 3;
}

/// Q_{i,j,k,l} = det(row i of A1, row j of A2, row k of A3, row l of A4).
template <Field F>
QuadTensor<typename F::value_type> quadrifocal_from_cameras(const F& f,
                                                            std::span<const Camera<typename F::value_type>, 4> cams) {
    for (const auto& a : cams) detail::require_full_rank(f, a, "quadrifocal_from_cameras");
    QuadTensor<typename F::value_type> q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    q(i, j, k, l) = detail::det4(f, {cams[0].rows[i], cams[1].rows[j], cams[2].rows[k], cams[3].rows[l]});
    return q;
}

template <Field F>
TrifocalTensor<typename F::value_type> trifocal_from_cameras(const F& f,
                                                             std::span<const Camera<typename F::value_type>, 3> cams) {
    for (const auto& a : cams) detail::require_full_rank(f, a, "trifocal_from_cameras");
    TrifocalTensor<typename F::value_type> t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int q = 0; q < 3; ++q) {
                const auto [k, l] = detail::kComplementPair[q];
                t.raw[i][j][q] = detail::det4(f, {cams[0].rows[i], cams[1].rows[j], cams[2].rows[k], cams[2].rows[l]});
            }
    return t;
}

template <Field F>
FundamentalMatrix<typename F::value_type> fundamental_from_cameras(
    const F& f, std::span<const Camera<typename F::value_type>, 2> cams) {
    for (const auto& a : cams) detail::require_full_rank(f, a, "fundamental_from_cameras");
    FundamentalMatrix<typename F::value_type> m;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            const auto [i, j] = detail::kComplementPair[p];
            const auto [k, l] = detail::kComplementPair[q];
            m.raw[p][q] = detail::det4(f, {cams[0].rows[i], cams[0].rows[j], cams[1].rows[k], cams[1].rows[l]});
        }
    return m;
}

template <Field F>
Epipole<typename F::value_type> epipole_from_cameras(const F& f,
                                                    std::span<const Camera<typename F::value_type>, 2> cams) {
    for (const auto& a : cams) detail::require_full_rank(f, a, "epipole_from_cameras");
    Epipole<typename F::value_type> e;
    for (int p = 0; p < 3; ++p)
        e.raw[p] = detail::det4(f, {cams[0].rows[p], cams[1].rows[0], cams[1].rows[1], cams[1].rows[2]});
    return e;
}

// Matrix presentations. The identifications wedge^2 V ≅ V* and the epipole
// coordinates carry the alternating signs below; each is a fixed diagonal
// ±1 element of GL(3), so these are points of the same varieties.

/// Entry (p,q) = (-1)^(p+q) F_{{i,j},{k,l}} with {p,i,j} = {q,k,l} = {0,1,2}.
template <Field F>
Mat3<typename F::value_type> fundamental_matrix(const F& f, const FundamentalMatrix<typename F::value_type>& m) {
    Mat3<typename F::value_type> out;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) out[p][q] = ((p + q) % 2 == 0) ? m.raw[p][q] : f.neg(m.raw[p][q]);
    return out;
}

/// T as an element of V1⊗V2⊗V3*: entry (i,j,q) = (-1)^q T_{i,j,complement(q)}.
template <Field F>
typename F::value_type trifocal_entry(const F& f, const TrifocalTensor<typename F::value_type>& t, int i, int j, int q) {
    return (q % 2 == 0) ? t.raw[i][j][q] : f.neg(t.raw[i][j][q]);
}

/// Epipole coordinates (-1)^(p+1) S_{p,{1,2,3}}, p 0-based.
template <Field F>
Vec3<typename F::value_type> epipole_vector(const F& f, const Epipole<typename F::value_type>& e) {
    Vec3<typename F::value_type> out;
    for (int p = 0; p < 3; ++p) out[p] = (p % 2 == 1) ? e.raw[p] : f.neg(e.raw[p]);
    return out;
}

/// The camera (Id_3 | x).
template <Field F>
Camera<typename F::value_type> normal_form_camera(const F& f, const Vec3<typename F::value_type>& x) {
    Camera<typename F::value_type> a;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) a.rows[r][c] = (r == c) ? f.one() : f.zero();
        a.rows[r][3] = x[r];
    }
    return a;
}

template <Field F>
std::array<Camera<typename F::value_type>, 4> normal_form_cameras(const F& f,
                                                                 const std::array<Vec3<typename F::value_type>, 4>& x) {
    return {normal_form_camera(f, x[0]), normal_form_camera(f, x[1]), normal_form_camera(f, x[2]),
            normal_form_camera(f, x[3])};
}

template <class T>
struct NormalizedCameras {
    std::array<Vec3<T>, 4> x;  // x[b][i] is x_{b+1,i+1}
    std::array<Mat3<T>, 4> g;  // g[b] = B_b^{-1}, so g[b] * A_b = (Id | x[b])
};

/// Moves each camera (B | c) to (Id | B^{-1} c). Throws CameraError when some
/// B is singular.
template <Field F>
NormalizedCameras<typename F::value_type> normalize_cameras(const F& f,
                                                            std::span<const Camera<typename F::value_type>> cams) {
    using T = typename F::value_type;
    NormalizedCameras<T> out;
    if (cams.size() > 4) throw std::invalid_argument("normalize_cameras: at most four cameras");
    for (std::size_t b = 0; b < cams.size(); ++b) {
        DenseMatrix<T> aug(3, 6, f.zero());
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) aug(r, c) = cams[b].rows[r][c];
            aug(r, 3 + r) = f.one();
        }
        auto ech = rref(f, aug);
        if (ech.rank() < 3 || ech.pivots[2] != 2) throw CameraError("camera not normalizable: left 3x3 block is singular");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out.g[b][r][c] = ech.reduced(r, 3 + c);
        for (int r = 0; r < 3; ++r) {
            T s = f.zero();
            for (int c = 0; c < 3; ++c) s = f.add(s, f.mul(out.g[b][r][c], cams[b].rows[c][3]));
            out.x[b][r] = s;
        }
    }
    return out;
}

/// Uniform value in [0, p) from raw 64-bit draws (rejection keeps it exact and
/// independent of the standard library's distribution code).
inline std::uint64_t uniform_residue(std::mt19937_64& rng, std::uint64_t p) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % p);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % p;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_residue(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline constexpr int kCameraRetryCap = 100;

/// A camera with uniform entries, redrawn until it has rank 3.
Camera<std::uint64_t> random_camera(const ModularField& f, std::mt19937_64& rng);
/// A camera with integer entries in [-bound, bound], redrawn until rank 3.
Camera<mpq_class> random_integer_camera(std::mt19937_64& rng, int bound);

ModularTensor random_quadrifocal_point(const ModularField& f, std::mt19937_64& rng);
ModularTensor random_quadrifocal_point(const ModularField& f, std::uint64_t seed);
/// Uniform point of the ambient 81-dimensional space.
ModularTensor random_tensor(const ModularField& f, std::mt19937_64& rng);

/// A quadrifocal tensor with exact integer entries from small integer cameras.
QuadTensor<mpq_class> random_integer_quadrifocal_point(std::mt19937_64& rng, int bound = 9);

/// 81 x 48 Jacobian of the camera-to-tensor map; column 12*b + 4*r + c is the
/// derivative along entry (r, c) of camera b.
template <Field F>
DenseMatrix<typename F::value_type> camera_jacobian(const F& f,
                                                   std::span<const Camera<typename F::value_type>, 4> cams) {
    using T = typename F::value_type;
    DenseMatrix<T> jac(kTensorSize, 48, f.zero());
    for (int flat = 0; flat < kTensorSize; ++flat) {
        std::array<Vec4<T>, 4> cols;
        for (int b = 0; b < 4; ++b) cols[b] = cams[b].rows[mode_index(flat, b)];
        for (int b = 0; b < 4; ++b) {
            const int r = mode_index(flat, b);
            for (int c = 0; c < 4; ++c) {
                auto e = cols;
                for (int t = 0; t < 4; ++t) e[b][t] = (t == c) ? f.one() : f.zero();
                jac(flat, 12 * b + 4 * r + c) = detail::det4(f, e);
            }
        }
    }
    return jac;
}

/// Entry S (bitmask over {0..m-1}) is det B[S,S]; the empty minor is 1.
template <Field F>
std::vector<typename F::value_type> principal_minor_tensor(const F& f, const DenseMatrix<typename F::value_type>& b) {
    const std::size_t m = b.rows();
    if (b.cols() != m) throw std::invalid_argument("principal_minor_tensor: square matrix required");
    if (m > 16) throw std::invalid_argument("principal_minor_tensor: matrix too large");
    std::vector<typename F::value_type> out(std::size_t{1} << m);
    for (std::size_t s = 0; s < out.size(); ++s) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            if (s >> i & 1) idx.push_back(i);
        DenseMatrix<typename F::value_type> sub(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = b(idx[r], idx[c]);
        out[s] = idx.empty() ? f.one() : determinant(f, std::move(sub));
    }
    return out;
}

}  // namespace qf
