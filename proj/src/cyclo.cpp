#include "quivar/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "lexer.hpp"
#include "zkernel.hpp"

namespace quivar {

using detail::i128;

namespace {

constexpr int N = CycNum::kDegree;

using SmallCoords = std::array<std::int64_t, N>;

// z^k reduced to the power basis, k = 0..23.
const std::array<SmallCoords, 24>& zeta_table() {
    static const auto table = [] {
        std::array<SmallCoords, 24> t{};
        SmallCoords cur{};
        cur[0] = 1;
        for (int k = 0; k < 24; ++k) {
            t[k] = cur;
            // multiply by z: shift up, then fold z^8 = z^4 - 1
            std::int64_t top = cur[7];
            for (int j = 7; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            cur[4] += top;
            cur[0] -= top;
        }
        return t;
    }();
    return table;
}

// Images of z^k (k < 8) under z -> z^-1.
const std::array<SmallCoords, N>& conj_table() {
    static const auto table = [] {
        std::array<SmallCoords, N> t{};
        for (int k = 0; k < N; ++k) t[k] = zeta_table()[(24 - k) % 24];
        return t;
    }();
    return table;
}

int max_bits(const SmallCoords& n, std::int64_t d) {
    int b = detail::bits64(d);
    for (auto v : n) b = std::max(b, detail::bits64(v));
    return b;
}

CycNum finish128(std::array<i128, N>& v, i128 den) {
    detail::normalize128(v.data(), N, den);
    bool ok = detail::fits64(den);
    for (auto x : v) ok = ok && detail::fits64(x);
    if (ok) {
        SmallCoords n{};
        for (int k = 0; k < N; ++k) n[k] = std::int64_t(v[k]);
        return CycNum::from_small(n, std::int64_t(den));
    }
    CycNum::Big b;
    for (int k = 0; k < N; ++k) b.num[k] = detail::to_mpz(v[k]);
    b.den = detail::to_mpz(den);
    return CycNum::from_big(std::move(b));
}

CycNum big_add(const CycNum::Big& a, const CycNum::Big& b, bool subtract) {
    CycNum::Big r;
    r.den = a.den * b.den;
    for (int k = 0; k < N; ++k) {
        if (subtract) r.num[k] = a.num[k] * b.den - b.num[k] * a.den;
        else r.num[k] = a.num[k] * b.den + b.num[k] * a.den;
    }
    return CycNum::from_big(std::move(r));
}

CycNum big_mul(const CycNum::Big& a, const CycNum::Big& b) {
    std::array<mpz_class, 15> c;
    for (int p = 0; p < N; ++p) {
        if (a.num[p] == 0) continue;
        for (int q = 0; q < N; ++q)
            if (b.num[q] != 0) c[p + q] += a.num[p] * b.num[q];
    }
    detail::reduce_phi24(c.data());
    CycNum::Big r;
    for (int k = 0; k < N; ++k) r.num[k] = std::move(c[k]);
    r.den = a.den * b.den;
    return CycNum::from_big(std::move(r));
}

// Polynomials over Q as coefficient vectors, lowest degree first.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        mpq_class f = r.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        trim(r);
    }
    trim(q);
}

}  // namespace

CycNum::CycNum(long long value) {
    if (value == std::numeric_limits<long long>::min()) {
        Big b;
        b.num[0] = detail::to_mpz(std::int64_t(value));
        *this = from_big(std::move(b));
        return;
    }
    num_[0] = value;
}

CycNum::CycNum(const mpq_class& value) {
    Big b;
    b.num[0] = value.get_num();
    b.den = value.get_den();
    *this = from_big(std::move(b));
}

CycNum CycNum::from_small(const SmallCoords& num, std::int64_t den) {
    std::array<i128, N> v{};
    for (int k = 0; k < N; ++k) v[k] = num[k];
    i128 d = den;
    if (d < 0) {
        d = -d;
        for (auto& x : v) x = -x;
    }
    if (d == 0) throw DivisionByZero();
    detail::normalize128(v.data(), N, d);
    bool ok = detail::fits64(d);
    for (auto x : v) ok = ok && detail::fits64(x);
    CycNum r;
    if (ok) {
        for (int k = 0; k < N; ++k) r.num_[k] = std::int64_t(v[k]);
        r.den_ = std::int64_t(d);
        return r;
    }
    Big b;
    for (int k = 0; k < N; ++k) b.num[k] = detail::to_mpz(v[k]);
    b.den = detail::to_mpz(d);
    return from_big(std::move(b));
}

CycNum CycNum::from_big(Big b) {
    if (b.den == 0) throw DivisionByZero();
    detail::normalize_mpz(b.num.data(), N, b.den);
    bool fits = detail::mpz_fits64(b.den);
    for (const auto& v : b.num) fits = fits && detail::mpz_fits64(v);
    CycNum r;
    if (fits) {
        for (int k = 0; k < N; ++k) r.num_[k] = b.num[k].get_si();
        r.den_ = b.den.get_si();
        return r;
    }
    r.big_ = std::make_shared<const Big>(std::move(b));
    return r;
}

CycNum::Big CycNum::to_big() const {
    if (big_) return *big_;
    Big b;
    for (int k = 0; k < N; ++k) b.num[k] = detail::to_mpz(num_[k]);
    b.den = detail::to_mpz(den_);
    return b;
}

CycNum CycNum::from_coords(const std::array<mpq_class, N>& coords) {
    Big b;
    b.den = 1;
    for (const auto& c : coords) mpz_lcm(b.den.get_mpz_t(), b.den.get_mpz_t(), c.get_den_mpz_t());
    for (int k = 0; k < N; ++k) b.num[k] = coords[k].get_num() * (b.den / coords[k].get_den());
    return from_big(std::move(b));
}

CycNum CycNum::zeta_power(long long k) {
    long long m = ((k % 24) + 24) % 24;
    return from_small(zeta_table()[m], 1);
}

CycNum CycNum::sqrt2() {
    // z^3 + z^-3 = 2 cos(pi/4)
    return zeta_power(3) + zeta_power(21);
}

CycNum CycNum::sqrt3() {
    // z^2 + z^-2 = 2 cos(pi/6)
    return zeta_power(2) + zeta_power(22);
}

mpq_class CycNum::coord(int k) const {
    if (big_) {
        mpq_class q(big_->num[k], big_->den);
        q.canonicalize();
        return q;
    }
    mpq_class q(detail::to_mpz(num_[k]), detail::to_mpz(den_));
    q.canonicalize();
    return q;
}

std::array<mpq_class, CycNum::kDegree> CycNum::coords() const {
    std::array<mpq_class, N> out;
    for (int k = 0; k < N; ++k) out[k] = coord(k);
    return out;
}

bool CycNum::is_zero() const {
    if (big_) return false;
    return std::all_of(num_.begin(), num_.end(), [](auto v) { return v == 0; });
}

bool CycNum::is_one() const {
    if (big_ || den_ != 1 || num_[0] != 1) return false;
    return std::all_of(num_.begin() + 1, num_.end(), [](auto v) { return v == 0; });
}

bool CycNum::is_rational() const {
    if (big_) return std::all_of(big_->num.begin() + 1, big_->num.end(), [](const auto& v) { return v == 0; });
    return std::all_of(num_.begin() + 1, num_.end(), [](auto v) { return v == 0; });
}

bool CycNum::is_integer() const {
    if (!is_rational()) return false;
    return big_ ? big_->den == 1 : den_ == 1;
}

CycNum CycNum::operator-() const {
    if (big_) {
        Big b = *big_;
        for (auto& v : b.num) v = -v;
        return from_big(std::move(b));
    }
    // INT64_MIN is excluded from the small range, so negation cannot overflow.
    CycNum r = *this;
    for (auto& v : r.num_) v = -v;
    return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_ && max_bits(a.num_, a.den_) + max_bits(b.num_, b.den_) <= 124) {
        std::array<i128, N> v{};
        i128 den;
        if (a.den_ == b.den_) {
            for (int k = 0; k < N; ++k) v[k] = i128(a.num_[k]) + b.num_[k];
            den = a.den_;
        } else {
            auto g = std::int64_t(detail::gcd128(detail::u128(a.den_), detail::u128(b.den_)));
            std::int64_t ma = b.den_ / g, mb = a.den_ / g;
            for (int k = 0; k < N; ++k) v[k] = i128(a.num_[k]) * ma + i128(b.num_[k]) * mb;
            den = i128(a.den_) * ma;
        }
        return finish128(v, den);
    }
    return big_add(a.to_big(), b.to_big(), false);
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.is_zero() || b.is_zero()) return CycNum();
    if (!a.big_ && !b.big_ && max_bits(a.num_, a.den_) + max_bits(b.num_, b.den_) <= 118) {
        std::array<i128, 15> c{};
        for (int p = 0; p < N; ++p) {
            if (a.num_[p] == 0) continue;
            for (int q = 0; q < N; ++q) c[p + q] += i128(a.num_[p]) * b.num_[q];
        }
        detail::reduce_phi24(c.data());
        std::array<i128, N> v;
        std::copy_n(c.begin(), N, v.begin());
        return finish128(v, i128(a.den_) * b.den_);
    }
    return big_mul(a.to_big(), b.to_big());
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) {
        Big b = to_big();
        Big r;
        r.num[0] = b.den;
        r.den = b.num[0];
        return from_big(std::move(r));
    }
    // Extended Euclid on (p, Phi_24): s*p + t*Phi = 1 since Phi_24 is
    // irreducible and p is a nonzero residue of lower degree.
    QPoly p(N);
    for (int k = 0; k < N; ++k) p[k] = coord(k);
    trim(p);
    QPoly phi = {1, 0, 0, 0, -1, 0, 0, 0, 1};
    QPoly r0 = phi, r1 = p, s0 = {}, s1 = {mpq_class(1)};
    while (r1.size() > 1) {
        QPoly q, rem;
        poly_divmod(r0, r1, q, rem);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant c, and s1 * p = c (mod Phi).
    mpq_class c = r1.at(0);
    std::array<mpq_class, N> out;
    for (std::size_t k = 0; k < s1.size(); ++k) out.at(k) = s1[k] / c;
    return from_coords(out);
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

CycNum CycNum::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

CycNum CycNum::conj() const {
    const auto& t = conj_table();
    if (!big_) {
        std::array<i128, N> v{};
        for (int k = 0; k < N; ++k) {
            if (num_[k] == 0) continue;
            for (int j = 0; j < N; ++j) v[j] += i128(num_[k]) * t[k][j];
        }
        return finish128(v, den_);
    }
    Big r;
    r.den = big_->den;
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            if (t[k][j] != 0) r.num[j] += big_->num[k] * long(t[k][j]);
    return from_big(std::move(r));
}

bool operator==(const CycNum& a, const CycNum& b) {
    if (!a.big_ && !b.big_) return a.den_ == b.den_ && a.num_ == b.num_;
    if (a.big_ && b.big_) return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
    return false;
}

CycNum cyc_arith(CycOp op, const CycNum& a, const CycNum& b) {
    switch (op) {
        case CycOp::add: return a + b;
        case CycOp::sub: return a - b;
        case CycOp::mul: return a * b;
        case CycOp::div: return a / b;
    }
    throw Error("unknown arithmetic operation");
}

std::complex<double> CycNum::embed() const {
    std::complex<double> acc(0.0, 0.0);
    double den = big_ ? big_->den.get_d() : double(den_);
    for (int k = 0; k < N; ++k) {
        double c = big_ ? big_->num[k].get_d() : double(num_[k]);
        if (c == 0.0) continue;
        double angle = std::numbers::pi * k / 12.0;
        acc += c * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc / den;
}

double CycNum::max_abs_coord() const {
    double m = 0;
    for (int k = 0; k < N; ++k) m = std::max(m, std::abs(coord(k).get_d()));
    return m;
}

namespace {

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(std::uint8_t(v >> s));
}

void append_magnitude(std::vector<std::uint8_t>& out, const mpz_class& v) {
    std::size_t count = 0;
    std::vector<std::uint8_t> buf((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
    mpz_export(buf.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    append_u32(out, std::uint32_t(count));
    out.insert(out.end(), buf.begin(), buf.begin() + count);
}

}  // namespace

void CycNum::append_canonical_bytes(std::vector<std::uint8_t>& out) const {
    for (int k = 0; k < N; ++k) {
        mpq_class q = coord(k);
        int s = sgn(q);
        out.push_back(s == 0 ? 0 : (s > 0 ? 1 : 2));
        mpz_class num = abs(q.get_num());
        append_magnitude(out, num);
        append_magnitude(out, q.get_den());
    }
}

std::vector<std::uint8_t> CycNum::canonical_bytes() const {
    std::vector<std::uint8_t> out;
    append_canonical_bytes(out);
    return out;
}

std::string CycNum::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < N; ++k) {
        mpq_class q = coord(k);
        if (q == 0) continue;
        bool neg = q < 0;
        mpq_class mag = abs(q);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "z24";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) return "0";
    return os.str();
}

std::size_t CycNum::hash() const {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    std::uint64_t h = 0x12345;
    if (!big_) {
        h = mix(h, std::uint64_t(den_));
        for (auto v : num_) h = mix(h, std::uint64_t(v));
        return std::size_t(h);
    }
    h = mix(h, std::hash<std::string>{}(big_->den.get_str(16)));
    for (const auto& v : big_->num) h = mix(h, std::hash<std::string>{}(v.get_str(16)));
    return std::size_t(h);
}

// ---------------------------------------------------------------------------
// Expression grammar

namespace {

class CycParser {
public:
    explicit CycParser(std::string_view text) : lex_(text) {}

    CycNum parse() {
        CycNum v = expr();
        if (lex_.peek().kind != detail::Token::Kind::end) lex_.fail("unexpected trailing input");
        return v;
    }

private:
    CycNum expr() {
        CycNum v = term();
        for (;;) {
            if (lex_.accept_op('+'))
                v = v + term();
            else if (lex_.accept_op('-'))
                v = v - term();
            else
                return v;
        }
    }

    bool starts_primary() const {
        const auto& t = lex_.peek();
        return t.kind == detail::Token::Kind::number || t.kind == detail::Token::Kind::ident || t.is_op('(');
    }

    CycNum term() {
        CycNum v = unary();
        for (;;) {
            if (lex_.accept_op('*')) {
                v = v * unary();
            } else if (lex_.peek().is_op('/')) {
                std::size_t pos = lex_.take().pos;
                CycNum d = unary();
                if (d.is_zero()) throw ParseError("division by zero", pos);
                v = v / d;
            } else if (starts_primary()) {
                v = v * unary();
            } else {
                return v;
            }
        }
    }

    CycNum unary() {
        if (lex_.accept_op('-')) return -unary();
        if (lex_.accept_op('+')) return unary();
        return power();
    }

    CycNum power() {
        std::size_t pos = lex_.peek().pos;
        CycNum base = primary();
        if (!lex_.accept_op('^')) return base;
        long long e = exponent();
        if (e < 0 && base.is_zero()) throw ParseError("division by zero", pos);
        return base.pow(e);
    }

    long long exponent() {
        bool paren = lex_.accept_op('(');
        bool neg = false;
        if (lex_.accept_op('-'))
            neg = true;
        else
            lex_.accept_op('+');
        const auto& t = lex_.peek();
        if (t.kind != detail::Token::Kind::number || t.text.find('.') != std::string::npos) lex_.fail("expected integer exponent");
        long long e = std::stoll(lex_.take().text);
        if (paren) lex_.expect_op(')');
        return neg ? -e : e;
    }

    CycNum primary() {
        const auto& t = lex_.peek();
        if (t.kind == detail::Token::Kind::number) return CycNum(detail::literal_value(lex_.take().text));
        if (t.kind == detail::Token::Kind::ident) {
            if (t.text == "i" || t.text == "w") {
                lex_.take();
                return CycNum::imag_unit();
            }
            if (t.text == "sqrt2") {
                lex_.take();
                return CycNum::sqrt2();
            }
            if (t.text == "sqrt3") {
                lex_.take();
                return CycNum::sqrt3();
            }
            if (t.text == "z24") {
                lex_.take();
                return CycNum::zeta();
            }
            if (t.text == "z8") {
                lex_.take();
                return CycNum::zeta8();
            }
            lex_.fail("unknown symbol");
        }
        if (lex_.accept_op('(')) {
            CycNum v = expr();
            lex_.expect_op(')');
            return v;
        }
        lex_.fail("expected a number, symbol or '('");
    }

    detail::Lexer lex_;
};

}  // namespace

CycNum parse_cyclotomic(std::string_view text) { return CycParser(text).parse(); }

}  // namespace quivar
