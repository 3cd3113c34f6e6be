#include "qf/grassmannian.hpp"

#include <stdexcept>

namespace qf {

namespace {

mpz_class factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

void check(long r, long n) {
    if (!(0 < r && r < n)) throw std::invalid_argument("Grassmannian requires 0 < r < n");
}

}  // namespace

long grassmannian_dim(long r, long n) {
    check(r, n);
    return r * (n - r);
}

mpz_class grassmannian_degree(long r, long n) {
    check(r, n);
    mpz_class num = factorial(r * (n - r));
    mpz_class den = 1;
    for (long i = 0; i < r; ++i) {
        num *= factorial(i);
        den *= factorial(n - r + i);
    }
    if (num % den != 0) throw std::logic_error("grassmannian_degree: non-integral quotient");
    return num / den;
}

long camera_git_quotient_dim(long n_cameras) {
    if (n_cameras < 2) throw std::invalid_argument("at least two cameras are needed");
    return 4 * (3 * n_cameras - 4) + 1 - n_cameras;
}

}  // namespace qf
