#include "quivar/molien.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "lexer.hpp"

namespace quivar {

namespace {

using detail::Lexer;
using detail::Token;

std::string series_text(const std::vector<mpq_class>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        mpq_class a = abs(c[k]);
        if (!first) os << (sgn(c[k]) < 0 ? " - " : " + ");
        else if (sgn(c[k]) < 0) os << "-";
        first = false;
        if (k == 0 || a != 1) os << a.get_str();
        if (k > 0) os << (a != 1 ? "*t" : "t");
        if (k > 1) os << "^" << k;
    }
    return first ? "0" : os.str();
}

int parse_int(Lexer& lex) {
    Token t = lex.take();
    if (t.kind != Token::Kind::number || t.text.find('.') != std::string::npos)
        throw ParseError("expected an integer", t.pos);
    return std::stoi(t.text);
}

// Optional "^k" after a t or a factor.
int parse_power(Lexer& lex) { return lex.accept_op('^') ? parse_int(lex) : 1; }

std::vector<mpz_class> parse_numerator(Lexer& lex) {
    std::vector<mpz_class> poly;
    bool first = true;
    for (;;) {
        int sign = 1;
        if (lex.accept_op('-'))
            sign = -1;
        else if (!lex.accept_op('+') && !first)
            break;
        first = false;
        mpz_class coef = 1;
        int power = 0;
        const bool has_coef = lex.peek().kind == Token::Kind::number;
        if (has_coef) {
            coef = parse_int(lex);
            lex.accept_op('*');
        }
        if (lex.peek().kind == Token::Kind::ident) {
            if (lex.peek().text != "t") lex.fail("expected 't'");
            lex.take();
            power = parse_power(lex);
        } else if (!has_coef) {
            lex.fail("expected a term");
        }
        if (power < 0) throw ParseError("negative power of t", lex.peek().pos);
        if (poly.size() <= std::size_t(power)) poly.resize(power + 1, 0);
        poly[power] += sign * coef;
    }
    return poly;
}

// "(1-t^d)" with an optional "^e".
std::pair<int, int> parse_factor(Lexer& lex) {
    lex.expect_op('(');
    Token one = lex.take();
    if (one.kind != Token::Kind::number || one.text != "1") throw ParseError("factor must read (1-t^d)", one.pos);
    lex.expect_op('-');
    if (lex.peek().kind != Token::Kind::ident || lex.peek().text != "t") lex.fail("expected 't'");
    lex.take();
    int d = parse_power(lex);
    lex.expect_op(')');
    int e = parse_power(lex);
    if (d < 1 || e < 1) throw ParseError("factor degrees and exponents must be positive", one.pos);
    return {d, e};
}

}  // namespace

std::string MolienSeries::to_string() const { return series_text(coefficients); }

std::string ClosedForm::to_string() const {
    std::vector<mpq_class> num(numerator.begin(), numerator.end());
    std::string out = "(" + series_text(num) + ")/(";
    for (auto [d, e] : denominator) {
        out += "(1-t" + (d == 1 ? std::string() : "^" + std::to_string(d)) + ")";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out + ")";
}

ClosedForm parse_closed_form(std::string_view text) {
    Lexer lex(text);
    ClosedForm f;
    if (lex.accept_op('(')) {
        f.numerator = parse_numerator(lex);
        lex.expect_op(')');
    } else {
        f.numerator = parse_numerator(lex);
    }
    if (lex.accept_op('/')) {
        // Either a bare product of factors or the product wrapped once more.
        bool wrapped = false;
        if (lex.peek().is_op('(')) {
            Lexer probe = lex;
            probe.take();
            wrapped = probe.peek().is_op('(');
        }
        if (wrapped) lex.take();
        while (lex.peek().is_op('(')) f.denominator.push_back(parse_factor(lex));
        if (wrapped) lex.expect_op(')');
        if (f.denominator.empty()) lex.fail("expected a (1-t^d) factor");
    }
    if (lex.peek().kind != Token::Kind::end) lex.fail("unexpected trailing input");
    while (f.numerator.size() > 1 && f.numerator.back() == 0) f.numerator.pop_back();
    if (f.numerator.empty() || f.numerator[0] != 1) throw ParseError("numerator must have constant term 1", 0);
    std::sort(f.denominator.begin(), f.denominator.end());
    return f;
}

std::vector<CycNum> det_one_minus_t(const CycMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("det(I - tM) needs a square matrix");
    const int n = a.rows();
    const std::vector<CycNum> av = a.entries();
    // Characteristic polynomial p(x) = sum c_j x^j; det(I - tA) = sum c_{n-k} t^k.
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
    std::vector<CycNum> c(n + 1);
    c[n] = CycNum(1);
    std::vector<CycNum> m(std::size_t(n) * n), am(std::size_t(n) * n);
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i) m[std::size_t(i) * n + i] += c[n - k + 1];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CycNum s;
                for (int l = 0; l < n; ++l) {
                    const CycNum& x = av[std::size_t(i) * n + l];
                    const CycNum& y = m[std::size_t(l) * n + j];
                    if (!x.is_zero() && !y.is_zero()) s += x * y;
                }
                am[std::size_t(i) * n + j] = std::move(s);
            }
        CycNum tr;
        for (int i = 0; i < n; ++i) tr += am[std::size_t(i) * n + i];
        c[n - k] = -tr / CycNum(k);
        std::swap(m, am);
    }
    std::vector<CycNum> d(n + 1);
    for (int k = 0; k <= n; ++k) d[k] = c[n - k];
    return d;
}

MolienSeries molien_series(const FiniteMatrixGroup& g, int order, unsigned threads) {
    if (order < 1) throw Error("series order must be at least 1");
    using Bucket = std::map<std::vector<std::uint8_t>, std::pair<std::vector<CycNum>, std::uint64_t>>;
    const std::size_t total = g.order();
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(1, total / 256))));
    std::vector<Bucket> parts(threads);
    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < total; i += threads) {
            std::vector<CycNum> d = det_one_minus_t(g.element(i));
            std::vector<std::uint8_t> key;
            for (const auto& x : d) x.append_canonical_bytes(key);
            auto [it, fresh] = parts[t].try_emplace(std::move(key), std::move(d), 0);
            ++it->second.second;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Bucket merged;
    for (auto& part : parts)
        for (auto& [key, val] : part) {
            auto [it, fresh] = merged.try_emplace(key, val.first, 0);
            it->second.second += val.second;
        }

    std::vector<CycNum> sum(order + 1);
    for (const auto& [key, val] : merged) {
        const auto& d = val.first;
        // 1/det(I - tg) as a power series; d[0] = 1.
        std::vector<CycNum> s(order + 1);
        s[0] = CycNum(1);
        for (int m = 1; m <= order; ++m) {
            CycNum acc;
            for (int k = 1; k < int(d.size()) && k <= m; ++k)
                if (!d[k].is_zero() && !s[m - k].is_zero()) acc -= d[k] * s[m - k];
            s[m] = acc;
        }
        const CycNum count(static_cast<long long>(val.second));
        for (int m = 0; m <= order; ++m) sum[m] += count * s[m];
    }

    MolienSeries out;
    out.group_order = total;
    out.coefficients.reserve(order + 1);
    const CycNum inv_order = CycNum(1) / CycNum(static_cast<long long>(total));
    for (int m = 0; m <= order; ++m) {
        CycNum c = sum[m] * inv_order;
        if (!c.is_integer() || sgn(c.coord(0)) < 0)
            throw NonIntegralCoefficient("Molien coefficient at t^" + std::to_string(m) + " is " + c.to_string());
        out.coefficients.push_back(c.coord(0));
    }
    return out;
}

MolienSeries expand_closed_form(const ClosedForm& form, int order) {
    if (order < 1) throw Error("series order must be at least 1");
    std::vector<mpz_class> s(order + 1, 0);
    for (std::size_t k = 0; k < form.numerator.size() && int(k) <= order; ++k) s[k] = form.numerator[k];
    for (auto [d, e] : form.denominator)
        for (int rep = 0; rep < e; ++rep)
            for (int k = d; k <= order; ++k) s[k] += s[k - d];
    MolienSeries out;
    out.coefficients.assign(s.begin(), s.end());
    return out;
}

MolienComparison compare_series(const MolienSeries& computed, const MolienSeries& expected) {
    MolienComparison r;
    r.computed = computed;
    r.expected = expected;
    const std::size_t n = std::min(computed.coefficients.size(), expected.coefficients.size());
    for (std::size_t k = 0; k < n; ++k)
        if (computed.coefficients[k] != expected.coefficients[k]) {
            r.first_mismatch = int(k);
            break;
        }
    r.match = !r.first_mismatch.has_value();
    return r;
}

MolienComparison molien_compare(const FiniteMatrixGroup& g, const ClosedForm& form, int order, unsigned threads) {
    return compare_series(molien_series(g, order, threads), expand_closed_form(form, order));
}

mpz_class degrees_product(std::span<const long long> degrees) {
    if (degrees.empty()) throw Error("degree list is empty");
    mpz_class p = 1;
    for (long long d : degrees) p *= mpz_class(std::to_string(d), 10);
    return p;
}

}  // namespace quivar
