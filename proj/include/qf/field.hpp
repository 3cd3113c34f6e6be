#pragma once

// Exact coefficient fields: word-sized prime fields and GMP rationals.
//
// A field is a small policy object; elements are plain values. Every routine
// that does arithmetic takes the field by const reference, so the modulus is a
// run-wide configuration rather than a global.

#include <concepts>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace qf {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Z/pZ with p < 2^32, so that a product of two residues fits in 64 bits.
class ModularField {
public:
    using value_type = std::uint64_t;

    static constexpr std::uint64_t default_modulus = 2147483647ULL;

    /// Throws std::invalid_argument unless p is a prime below 2^32.
    explicit ModularField(std::uint64_t p = default_modulus);

    std::uint64_t modulus() const noexcept { return p_; }

    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }

    value_type from_int(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    }
    value_type from_int128(__int128 v) const noexcept {
        __int128 r = v % static_cast<__int128>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }

    value_type add(value_type a, value_type b) const noexcept {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept { return (a * b) % p_; }
    value_type pow(value_type a, std::uint64_t e) const noexcept;
    /// Throws std::domain_error on zero.
    value_type inv(value_type a) const;

    bool is_zero(value_type a) const noexcept { return a == 0; }
    bool equal(value_type a, value_type b) const noexcept { return a == b; }

    std::string to_string(value_type a) const { return std::to_string(a); }

    bool operator==(const ModularField&) const = default;

private:
    std::uint64_t p_;
};

/// The rationals, backed by GMP. Values are always canonical (lowest terms,
/// positive denominator).
class RationalField {
public:
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const { return value_type(static_cast<long>(v)); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const;

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    std::string to_string(const value_type& a) const { return a.get_str(); }

    bool operator==(const RationalField&) const = default;
};

template <class F>
concept Field = requires(const F& f, const typename F::value_type& a,
                         const typename F::value_type& b) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::value_type>;
    { f.add(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.neg(a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
};

}  // namespace qf
