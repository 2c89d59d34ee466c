#pragma once

// Integer kernels shared by CycNum and CycMatrix. Values are coordinate
// vectors in Z[z] (z^8 = z^4 - 1) with one common denominator. The 128-bit
// path runs first; callers fall back to GMP when a bound check fails.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace quivar::detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }
inline std::uint64_t uabs64(std::int64_t v) { return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v); }

inline bool fits64(i128 v) {
    return v > i128(std::numeric_limits<std::int64_t>::min()) && v <= i128(std::numeric_limits<std::int64_t>::max());
}

inline u128 gcd128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if ((a >> 64) == 0 && (b >> 64) == 0) {
        std::uint64_t x = std::uint64_t(a), y = std::uint64_t(b);
        int shift = __builtin_ctzll(x | y);
        x >>= __builtin_ctzll(x);
        do {
            y >>= __builtin_ctzll(y);
            if (x > y) std::swap(x, y);
            y -= x;
        } while (y != 0);
        return u128(x << shift);
    }
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Bit length of |v|.
inline int bits(u128 v) {
    std::uint64_t hi = std::uint64_t(v >> 64);
    if (hi) return 128 - __builtin_clzll(hi);
    std::uint64_t lo = std::uint64_t(v);
    return lo ? 64 - __builtin_clzll(lo) : 0;
}
inline int bits64(std::int64_t v) {
    std::uint64_t a = uabs64(v);
    return a ? 64 - __builtin_clzll(a) : 0;
}

inline mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 a = uabs(v);
    mpz_class hi(static_cast<unsigned long>(std::uint64_t(a >> 64)));
    mpz_class lo(static_cast<unsigned long>(std::uint64_t(a)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

inline mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

inline bool mpz_fits64(const mpz_class& v) {
    return mpz_fits_slong_p(v.get_mpz_t()) && v != mpz_class(std::numeric_limits<long>::min());
}

// In-place reduction of a length-15 coefficient array modulo x^8 - x^4 + 1.
template <class T>
inline void reduce_phi24(T* c) {
    for (int k = 14; k >= 8; --k) {
        if (c[k] == 0) continue;
        c[k - 4] += c[k];
        c[k - 8] -= c[k];
        c[k] = 0;
    }
}

// Divides all values and den by their common gcd, leaving den > 0.
inline void normalize_mpz(mpz_class* values, std::size_t count, mpz_class& den) {
    if (sgn(den) < 0) {
        den = -den;
        for (std::size_t k = 0; k < count; ++k) values[k] = -values[k];
    }
    bool any = false;
    mpz_class g = den;
    for (std::size_t k = 0; k < count; ++k) {
        if (values[k] == 0) continue;
        any = true;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), values[k].get_mpz_t());
        if (g == 1) return;
    }
    if (!any) {
        den = 1;
        return;
    }
    if (g == 1) return;
    for (std::size_t k = 0; k < count; ++k)
        if (values[k] != 0) mpz_divexact(values[k].get_mpz_t(), values[k].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
}

// Same for 128-bit values; den must be positive.
inline void normalize128(i128* values, std::size_t count, i128& den) {
    bool any = false;
    u128 g = uabs(den);
    for (std::size_t k = 0; k < count; ++k) {
        if (values[k] == 0) continue;
        any = true;
        g = gcd128(g, uabs(values[k]));
        if (g == 1) return;
    }
    if (!any) {
        den = 1;
        return;
    }
    if (g == 1) return;
    i128 gs = i128(g);
    for (std::size_t k = 0; k < count; ++k) values[k] /= gs;
    den /= gs;
}

inline std::string i128_to_string(i128 v) { return to_mpz(v).get_str(); }

}  // namespace quivar::detail
