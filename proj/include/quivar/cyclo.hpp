#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "quivar/errors.hpp"

namespace quivar {

// Exact element of the cyclotomic field Q(z), z = exp(i*pi/12), a primitive
// 24th root of unity. Stored on the power basis z^0..z^7 modulo
// Phi_24(x) = x^8 - x^4 + 1 with one positive common denominator:
//
//   value = (n_0 + n_1 z + ... + n_7 z^7) / d,   gcd(n_0, ..., n_7, d) = 1.
//
// Small values live in machine words; any operation that would overflow is
// redone with GMP integers and the result is demoted again when it fits.
class CycNum {
public:
    static constexpr int kDegree = 8;
    static constexpr int kConductor = 24;

    CycNum() = default;
    CycNum(long long value);  // NOLINT(google-explicit-constructor)
    explicit CycNum(const mpq_class& value);

    static CycNum from_coords(const std::array<mpq_class, kDegree>& coords);
    static CycNum zeta_power(long long k);
    static CycNum zeta() { return zeta_power(1); }
    static CycNum imag_unit() { return zeta_power(6); }
    static CycNum sqrt2();
    static CycNum sqrt3();
    static CycNum zeta8() { return zeta_power(3); }
    // 4th root of unity exp(2 i pi / 4), the quartit clock phase.
    static CycNum omega4() { return zeta_power(6); }

    mpq_class coord(int k) const;
    std::array<mpq_class, kDegree> coords() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    bool is_integer() const;
    bool is_real() const { return conj() == *this; }

    // Complex conjugation: the Galois automorphism z -> z^-1.
    CycNum conj() const;
    CycNum inverse() const;
    CycNum pow(long long e) const;

    std::complex<double> embed() const;
    double max_abs_coord() const;

    // Canonical byte encoding: per coordinate a sign byte (0 zero, 1 positive,
    // 2 negative), then numerator and denominator magnitudes of the coordinate
    // in lowest terms, each as a 4-byte big-endian length followed by the
    // big-endian magnitude bytes.
    void append_canonical_bytes(std::vector<std::uint8_t>& out) const;
    std::vector<std::uint8_t> canonical_bytes() const;

    // Parseable text form, e.g. "1/2 - 1/2*z24^6".
    std::string to_string() const;
    std::size_t hash() const;

    CycNum operator-() const;
    friend CycNum operator+(const CycNum& a, const CycNum& b);
    friend CycNum operator-(const CycNum& a, const CycNum& b);
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    friend CycNum operator/(const CycNum& a, const CycNum& b);
    CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
    CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
    CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
    CycNum& operator/=(const CycNum& b) { return *this = *this / b; }
    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    // Raw common-denominator access, used by the matrix kernels.
    struct Big {
        std::array<mpz_class, kDegree> num;
        mpz_class den{1};
    };
    bool is_small() const { return !big_; }
    const std::array<std::int64_t, kDegree>& small_num() const { return num_; }
    std::int64_t small_den() const { return den_; }
    Big to_big() const;
    static CycNum from_big(Big value);  // normalizes
    static CycNum from_small(const std::array<std::int64_t, kDegree>& num, std::int64_t den);  // normalizes

private:
    std::array<std::int64_t, kDegree> num_{};
    std::int64_t den_ = 1;
    std::shared_ptr<const Big> big_;
};

// Arithmetic entry point matching the named operations.
enum class CycOp { add, sub, mul, div };
CycNum cyc_arith(CycOp op, const CycNum& a, const CycNum& b);
inline CycNum cyc_conj(const CycNum& a) { return a.conj(); }
inline std::complex<double> cyc_embed(const CycNum& a) { return a.embed(); }

// Grammar: rationals (integer or decimal literals), the symbols i, sqrt2,
// sqrt3, z24, z8, w, binary + - * /, unary minus, parentheses, integer
// exponents via ^ (negative exponents invert). Juxtaposition multiplies.
CycNum parse_cyclotomic(std::string_view text);

struct CycNumHash {
    std::size_t operator()(const CycNum& a) const { return a.hash(); }
};

}  // namespace quivar
