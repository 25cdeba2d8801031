#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "sympow/errors.hpp"

namespace sympow {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; the base set below is exact for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

// Prime field F_p for p up to 2^62. Elements are stored in Montgomery form for
// odd p (plain residues for p = 2), so `elem` values are only meaningful
// relative to the field object that produced them.
class PrimeField {
public:
    using elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p > (std::uint64_t(1) << 62)) throw invalid_argument_error("field characteristic exceeds 2^62");
        if (!detail::is_prime_u64(p)) throw invalid_argument_error("field characteristic " + std::to_string(p) + " is not prime");
        mont_ = (p != 2);
        if (mont_) {
            // ninv_ = -p^{-1} mod 2^64 via Newton iteration.
            std::uint64_t inv = p;
            for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
            ninv_ = ~inv + 1;
            std::uint64_t r = (~std::uint64_t(0)) % p + 1;  // 2^64 mod p
            r2_ = detail::mulmod_u64(r, r, p);
            one_ = redc(r2_);
        } else {
            ninv_ = 0;
            r2_ = 1;
            one_ = 1;
        }
    }

    std::uint64_t characteristic() const { return p_; }

    elem zero() const { return 0; }
    elem one() const { return one_; }
    bool is_zero(elem a) const { return a == 0; }
    bool equal(elem a, elem b) const { return a == b; }

    elem add(elem a, elem b) const {
        elem s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    elem sub(elem a, elem b) const { return a >= b ? a - b : a + p_ - b; }
    elem neg(elem a) const { return a == 0 ? 0 : p_ - a; }

    elem mul(elem a, elem b) const {
        if (!mont_) return a & b;
        return redc(detail::u128(a) * b);
    }

    elem inv(elem a) const {
        if (a == 0) throw invalid_argument_error("division by zero in prime field");
        return pow(a, p_ - 2);
    }
    elem div(elem a, elem b) const { return mul(a, inv(b)); }

    elem pow(elem a, std::uint64_t e) const {
        elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    elem from_int(long long v) const {
        long long m = static_cast<long long>(p_);
        long long r = v % m;
        if (r < 0) r += m;
        return to_elem(static_cast<std::uint64_t>(r));
    }

    elem from_mpz(const mpz_class& v) const {
        mpz_class m(mpz_class(static_cast<unsigned long>(p_)));
        mpz_class r = v % m;
        if (r < 0) r += m;
        return to_elem(r.get_ui());
    }

    // Canonical representative in [0, p).
    std::uint64_t rep(elem a) const { return mont_ ? redc(a) : a; }

    // Symmetric representative in (-p/2, p/2]; printing uses this.
    long long symmetric_rep(elem a) const {
        std::uint64_t r = rep(a);
        if (p_ > 2 && r > p_ / 2) return static_cast<long long>(r) - static_cast<long long>(p_);
        return static_cast<long long>(r);
    }

    std::string to_string(elem a) const { return std::to_string(symmetric_rep(a)); }

private:
    elem to_elem(std::uint64_t canonical) const {
        if (!mont_) return canonical;
        return redc(detail::u128(canonical) * r2_);
    }

    std::uint64_t redc(detail::u128 t) const {
        std::uint64_t m = static_cast<std::uint64_t>(t) * ninv_;
        detail::u128 s = t + detail::u128(m) * p_;
        std::uint64_t r = static_cast<std::uint64_t>(s >> 64);
        return r >= p_ ? r - p_ : r;
    }

    std::uint64_t p_;
    std::uint64_t ninv_;
    std::uint64_t r2_;
    elem one_;
    bool mont_;
};

// The rational numbers. mpq_class keeps every value in lowest terms with a
// positive denominator, which is exactly the normal form required here.
class Rationals {
public:
    using elem = mpq_class;

    std::uint64_t characteristic() const { return 0; }

    elem zero() const { return elem(0); }
    elem one() const { return elem(1); }
    bool is_zero(const elem& a) const { return sgn(a) == 0; }
    bool equal(const elem& a, const elem& b) const { return a == b; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem neg(const elem& a) const { return -a; }
    elem mul(const elem& a, const elem& b) const { return a * b; }

    elem inv(const elem& a) const {
        if (sgn(a) == 0) throw invalid_argument_error("division by zero in rationals");
        return 1 / a;
    }
    elem div(const elem& a, const elem& b) const { return a / inv_guard(b); }

    elem from_int(long long v) const { return elem(static_cast<long>(v)); }

    std::string to_string(const elem& a) const { return a.get_str(); }

private:
    const elem& inv_guard(const elem& b) const {
        if (sgn(b) == 0) throw invalid_argument_error("division by zero in rationals");
        return b;
    }
};

}  // namespace sympow
