#pragma once

#include <gmpxx.h>

namespace qf {

/// r(n - r). Throws std::invalid_argument unless 0 < r < n.
long grassmannian_dim(long r, long n);

/// Degree of Gr(r, n) in its Plücker embedding:
/// (r(n-r))! * prod_{i=0}^{r-1} i! / (n-r+i)!.
mpz_class grassmannian_degree(long r, long n);

/// Dimension of the cone over Gr(4, 3n) modulo the n-dimensional camera torus:
/// 4(3n - 4) + 1 - n = 11n - 15.
long camera_git_quotient_dim(long n_cameras);

}  // namespace qf
