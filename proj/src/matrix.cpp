#include "qf/matrix.hpp"

namespace qf {

std::size_t rank(const RationalField&, DenseMatrix<mpq_class> m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    DenseMatrix<mpz_class> z(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class den = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) z(r, c) = m(r, c).get_num() * (den / m(r, c).get_den());
    }

    mpz_class prev = 1;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t p = rk;
        while (p < rows && sgn(z(p, c)) == 0) ++p;
        if (p == rows) continue;
        z.swap_rows(p, rk);
        for (std::size_t i = rk + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = z(rk, c) * z(i, j) - z(i, c) * z(rk, j);
                mpz_divexact(z(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            z(i, c) = 0;
        }
        prev = z(rk, c);
        ++rk;
    }
    return rk;
}

}  // namespace qf
