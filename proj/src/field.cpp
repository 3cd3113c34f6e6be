#include "qf/field.hpp"

#include <stdexcept>

namespace qf {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact below 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

ModularField::ModularField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 32)) throw std::invalid_argument("modulus must be below 2^32: " + std::to_string(p));
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
}

ModularField::value_type ModularField::pow(value_type a, std::uint64_t e) const noexcept {
    value_type r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

ModularField::value_type ModularField::inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero in Z/pZ");
    return pow(a, p_ - 2);
}

RationalField::value_type RationalField::inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero rational");
    value_type r = 1;
    r /= a;
    return r;
}

}  // namespace qf
