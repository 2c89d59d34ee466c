#include "quivar/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "lexer.hpp"

namespace quivar {

namespace {

using Key = MultiPoly::Key;
using Term = MultiPoly::Term;

constexpr int kShift(int var) { return 8 * (MultiPoly::kMaxVars - 1 - var); }

// Graded lexicographic, highest first. With x1 in the top byte, plain key
// comparison is lexicographic on exponent vectors.
bool grlex_greater(const Term& a, const Term& b) {
    int da = MultiPoly::key_degree(a.first), db = MultiPoly::key_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
}

using Accumulator = std::unordered_map<Key, CycNum>;

void accumulate(Accumulator& acc, Key k, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(k, c);
    if (!fresh) it->second += c;
}

std::vector<Term> drain(Accumulator& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.emplace_back(k, std::move(c));
    return out;
}

}  // namespace

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw DimensionMismatch("polynomials support 0..8 variables");
}

MultiPoly MultiPoly::from_map(int nvars, std::vector<Term>&& unsorted) {
    MultiPoly p(nvars);
    p.terms_ = std::move(unsorted);
    std::sort(p.terms_.begin(), p.terms_.end(), grlex_greater);
    return p;
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
    Accumulator acc;
    for (auto& [k, c] : terms) accumulate(acc, k, c);
    return from_map(nvars, drain(acc));
}

MultiPoly MultiPoly::constant(int nvars, const CycNum& c) {
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(0, c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw DimensionMismatch("variable index out of range");
    MultiPoly p(nvars);
    p.terms_.emplace_back(Key(1) << kShift(index), CycNum(1));
    return p;
}

MultiPoly MultiPoly::monomial(int nvars, std::span<const int> exponents, const CycNum& c) {
    if (int(exponents.size()) != nvars) throw DimensionMismatch("exponent vector length differs from nvars");
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(pack(exponents), c);
    return p;
}

MultiPoly::Key MultiPoly::pack(std::span<const int> exponents) {
    if (exponents.size() > std::size_t(kMaxVars)) throw DimensionMismatch("too many variables");
    Key k = 0;
    for (std::size_t v = 0; v < exponents.size(); ++v) {
        if (exponents[v] < 0 || exponents[v] > 255) throw DimensionMismatch("exponent out of range 0..255");
        k |= Key(exponents[v]) << kShift(int(v));
    }
    return k;
}

std::vector<int> MultiPoly::unpack(Key key, int nvars) {
    std::vector<int> e(nvars);
    for (int v = 0; v < nvars; ++v) e[v] = key_exponent(key, v);
    return e;
}

int MultiPoly::key_degree(Key key) {
    int d = 0;
    for (; key; key >>= 8) d += int(key & 0xff);
    return d;
}

int MultiPoly::degree() const {
    return terms_.empty() ? -1 : key_degree(terms_.front().first);
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return key_degree(t.first) == d; });
}

CycNum MultiPoly::coefficient(std::span<const int> exponents) const {
    Key k = pack(exponents);
    for (const auto& [key, c] : terms_)
        if (key == k) return c;
    return CycNum();
}

void MultiPoly::require_same(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
        throw DimensionMismatch("arity mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) +
                                " variables");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same(o);
    Accumulator acc;
    for (const auto& [k, c] : terms_) accumulate(acc, k, c);
    for (const auto& [k, c] : o.terms_) accumulate(acc, k, c);
    return from_map(nvars_, drain(acc));
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same(o);
    if (is_zero() || o.is_zero()) return MultiPoly(nvars_);
    // Per-variable exponents stay below 256 when the total degree does.
    int max_exp = 0;
    for (int v = 0; v < nvars_; ++v) {
        int a = 0, b = 0;
        for (const auto& t : terms_) a = std::max(a, key_exponent(t.first, v));
        for (const auto& t : o.terms_) b = std::max(b, key_exponent(t.first, v));
        max_exp = std::max(max_exp, a + b);
    }
    if (max_exp > 255) throw DimensionMismatch("exponent exceeds 255");
    Accumulator acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) accumulate(acc, ka + kb, ca * cb);
    return from_map(nvars_, drain(acc));
}

MultiPoly MultiPoly::scaled(const CycNum& c) const {
    if (c.is_zero()) return MultiPoly(nvars_);
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.second *= c;
    return p;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw Error("negative polynomial power");
    MultiPoly result = constant(nvars_, CycNum(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::partial(int var) const {
    if (var < 0 || var >= nvars_) throw DimensionMismatch("variable index out of range");
    std::vector<Term> out;
    for (const auto& [k, c] : terms_) {
        int e = key_exponent(k, var);
        if (e == 0) continue;
        out.emplace_back(k - (Key(1) << kShift(var)), c * CycNum(e));
    }
    return from_map(nvars_, std::move(out));
}

CycNum MultiPoly::evaluate(std::span<const CycNum> point) const {
    if (int(point.size()) != nvars_) throw DimensionMismatch("evaluation point has the wrong length");
    CycNum s;
    for (const auto& [k, c] : terms_) {
        CycNum m = c;
        for (int v = 0; v < nvars_; ++v)
            if (int e = key_exponent(k, v)) m *= point[v].pow(e);
        s += m;
    }
    return s;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> point) const {
    if (int(point.size()) != nvars_) throw DimensionMismatch("evaluation point has the wrong length");
    std::complex<double> s = 0;
    for (const auto& [k, c] : terms_) {
        std::complex<double> m = c.embed();
        for (int v = 0; v < nvars_; ++v)
            if (int e = key_exponent(k, v)) m *= std::pow(point[v], e);
        s += m;
    }
    return s;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (terms_[k].first != o.terms_[k].first || terms_[k].second != o.terms_[k].second) return false;
    return true;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string coef = c.to_string();
        bool simple = c.is_rational();
        bool neg = simple && sgn(c.coord(0)) < 0;
        std::string mag = neg ? (-c).to_string() : coef;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        bool unit = simple && mag == "1";
        bool has_vars = k != 0;
        if (!unit || !has_vars) os << (simple ? mag : "(" + coef + ")");
        bool need_star = !unit || !has_vars;
        for (int v = 0; v < nvars_; ++v) {
            int e = key_exponent(k, v);
            if (!e) continue;
            if (need_star) os << "*";
            need_star = true;
            os << "x" << (v + 1);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

MultiPoly msym(std::span<const int> lambda, int nvars) {
    if (int(lambda.size()) > nvars) throw DimensionMismatch("partition is longer than the number of variables");
    std::vector<int> e(nvars, 0);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        if (lambda[k] <= 0) throw Error("partition parts must be positive");
        e[k] = lambda[k];
    }
    std::sort(e.begin(), e.end());
    std::vector<Term> terms;
    do {
        terms.emplace_back(MultiPoly::pack(e), CycNum(1));
    } while (std::next_permutation(e.begin(), e.end()));
    return MultiPoly::from_terms(nvars, std::move(terms));
}

namespace {

// Images x_i -> sum_j M[i,j] x_j as sparse linear forms.
struct LinearForms {
    std::vector<std::vector<std::pair<int, CycNum>>> rows;
};

void multiply_linear(Accumulator& out, const Accumulator& in, const std::vector<std::pair<int, CycNum>>& form) {
    out.clear();
    out.reserve(in.size() * form.size());
    for (const auto& [k, c] : in)
        for (const auto& [j, a] : form) accumulate(out, k + (Key(1) << kShift(j)), c * a);
}

// Horner over variables: f = sum_k x_v^k f_k(x_{v+1}, ...), so
// f(Mx) = (...(g_K L_v + g_{K-1}) L_v + ...) with g_k = f_k(Mx).
Accumulator horner(std::span<const Term> terms, int v, int nvars, const LinearForms& lf) {
    Accumulator result;
    if (v == nvars) {
        for (const auto& [k, c] : terms) accumulate(result, 0, c);
        return result;
    }
    // terms are sorted by the exponent of x_v, descending
    std::size_t i = 0;
    int current = -1;
    Accumulator tmp;
    while (i < terms.size()) {
        int k = MultiPoly::key_exponent(terms[i].first, v);
        std::size_t j = i;
        while (j < terms.size() && MultiPoly::key_exponent(terms[j].first, v) == k) ++j;
        if (current >= 0)
            for (int s = k; s < current; ++s) {
                multiply_linear(tmp, result, lf.rows[v]);
                std::swap(tmp, result);
            }
        Accumulator part = horner(terms.subspan(i, j - i), v + 1, nvars, lf);
        for (auto& [key, c] : part) accumulate(result, key, c);
        current = k;
        i = j;
    }
    for (int s = 0; s < current; ++s) {
        multiply_linear(tmp, result, lf.rows[v]);
        std::swap(tmp, result);
    }
    return result;
}

}  // namespace

MultiPoly substitute_linear(const MultiPoly& f, const CycMatrix& m) {
    const int n = f.nvars();
    if (!m.is_square() || m.rows() != n) throw DimensionMismatch("substitution matrix must be nvars x nvars");
    LinearForms lf;
    lf.rows.resize(n);
    bool monomial = true;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CycNum a = m.at(i, j);
            if (!a.is_zero()) lf.rows[i].emplace_back(j, a);
        }
        monomial = monomial && lf.rows[i].size() == 1;
    }
    if (monomial) {
        std::vector<Term> out;
        out.reserve(f.term_count());
        for (const auto& [k, c] : f.terms()) {
            Key nk = 0;
            CycNum coef = c;
            for (int i = 0; i < n; ++i) {
                int e = MultiPoly::key_exponent(k, i);
                if (!e) continue;
                const auto& [j, a] = lf.rows[i].front();
                nk += Key(e) << kShift(j);
                coef *= a.pow(e);
            }
            out.emplace_back(nk, coef);
        }
        return MultiPoly::from_terms(n, std::move(out));
    }
    // Sort by exponent vector, lexicographic descending, for the Horner split.
    std::vector<Term> terms = f.terms();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
    Accumulator acc = horner(terms, 0, n, lf);
    return MultiPoly::from_terms(n, drain(acc));
}

bool is_invariant(const MultiPoly& f, std::span<const CycMatrix> generators) {
    for (const auto& g : generators)
        if (substitute_linear(f, g) != f) return false;
    return true;
}

std::vector<MultiPoly> span_basis(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) return {};
    const int n = polys.front().nvars();
    // Columns: every monomial that occurs, in graded lex order (highest first).
    std::vector<Key> cols;
    for (const auto& p : polys) {
        if (p.nvars() != n) throw DimensionMismatch("arity mismatch in span");
        for (const auto& t : p.terms()) cols.push_back(t.first);
    }
    std::sort(cols.begin(), cols.end(), [](Key a, Key b) { return grlex_greater({a, CycNum()}, {b, CycNum()}); });
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::unordered_map<Key, std::size_t> col_of;
    for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;
    std::vector<std::vector<CycNum>> rows;
    for (const auto& p : polys) {
        std::vector<CycNum> r(cols.size());
        for (const auto& [k, c] : p.terms()) r[col_of[k]] = c;
        rows.push_back(std::move(r));
    }
    // Reduced row echelon form.
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        CycNum inv = rows[rank][c].inverse();
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            CycNum f = rows[r][c];
            for (std::size_t k = c; k < cols.size(); ++k)
                if (!rows[rank][k].is_zero()) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    std::vector<MultiPoly> basis;
    for (std::size_t r = 0; r < rank; ++r) {
        std::vector<Term> t;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!rows[r][c].is_zero()) t.emplace_back(cols[c], rows[r][c]);
        basis.push_back(MultiPoly::from_terms(n, std::move(t)));
    }
    return basis;
}

namespace {

std::vector<MultiPoly> degree_monomials(int nvars, int degree) {
    std::vector<MultiPoly> out;
    std::vector<int> e(nvars, 0);
    // Enumerate compositions of degree into nvars parts.
    auto rec = [&](auto&& self, int v, int left) -> void {
        if (v == nvars - 1) {
            e[v] = left;
            out.push_back(MultiPoly::monomial(nvars, e));
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[v] = k;
            self(self, v + 1, left - k);
        }
    };
    if (nvars == 0) return out;
    rec(rec, 0, degree);
    return out;
}

void check_budget(const FiniteMatrixGroup& g, std::size_t monomials, std::uint64_t budget) {
    long double work = (long double)g.order() * (long double)monomials;
    if (work > (long double)budget) throw CapExceeded(budget);
}

}  // namespace

std::vector<MultiPoly> reynolds_basis_naive(const FiniteMatrixGroup& g, int degree) {
    const auto elems = g.elements();
    std::vector<MultiPoly> avg;
    for (const auto& m : degree_monomials(g.dimension(), degree)) {
        MultiPoly s(g.dimension());
        for (const auto& el : elems) s = s + substitute_linear(m, el);
        if (!s.is_zero()) avg.push_back(s.scaled(CycNum(1) / CycNum(static_cast<long long>(elems.size()))));
    }
    return span_basis(avg);
}

std::vector<MultiPoly> reynolds_basis(const FiniteMatrixGroup& g, int degree, std::uint64_t budget) {
    if (degree < 0) throw Error("degree must be nonnegative");
    const int n = g.dimension();
    if (degree == 0) return {MultiPoly::constant(n, CycNum(1))};
    const auto monomials = degree_monomials(n, degree);
    check_budget(g, monomials.size(), budget);
    const auto elems = g.elements();
    // H: the monomial matrices of G, a subgroup on which averaging is cheap.
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i].is_monomial()) h.push_back(i);
    std::vector<MultiPoly> h_avg;
    for (const auto& m : monomials) {
        std::vector<Term> acc;
        for (auto i : h) {
            MultiPoly img = substitute_linear(m, elems[i]);
            acc.insert(acc.end(), img.terms().begin(), img.terms().end());
        }
        MultiPoly s = MultiPoly::from_terms(n, std::move(acc));
        if (!s.is_zero()) h_avg.push_back(s);
    }
    std::vector<MultiPoly> h_basis = span_basis(h_avg);
    // Right transversal T with G = union of H t; R_G(b) ~ sum_t b(t x).
    std::vector<bool> covered(elems.size(), false);
    std::vector<std::size_t> transversal;
    for (std::size_t t = 0; t < elems.size(); ++t) {
        if (covered[t]) continue;
        transversal.push_back(t);
        for (auto i : h) covered[g.multiply(i, t)] = true;
    }
    std::vector<MultiPoly> averaged;
    for (const auto& b : h_basis) {
        std::vector<Term> acc;
        for (auto t : transversal) {
            MultiPoly img = substitute_linear(b, elems[t]);
            acc.insert(acc.end(), img.terms().begin(), img.terms().end());
        }
        MultiPoly s = MultiPoly::from_terms(n, std::move(acc));
        if (!s.is_zero()) averaged.push_back(s);
    }
    return span_basis(averaged);
}

std::optional<CycNum> proportional(const MultiPoly& f, const MultiPoly& g) {
    if (f.nvars() != g.nvars()) return std::nullopt;
    if (g.is_zero()) return f.is_zero() ? std::optional<CycNum>(CycNum(1)) : std::nullopt;
    if (f.term_count() != g.term_count()) return std::nullopt;
    CycNum lambda = f.terms().front().second / g.terms().front().second;
    if (g.scaled(lambda) == f) return lambda;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, int nvars, const PolyEnv& env) : lex_(text), nvars_(nvars), env_(env) {}

    MultiPoly parse() {
        MultiPoly v = expr();
        if (lex_.peek().kind != detail::Token::Kind::end) lex_.fail("unexpected trailing input");
        return v;
    }

private:
    MultiPoly expr() {
        MultiPoly v = term();
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

    MultiPoly term() {
        MultiPoly v = unary();
        for (;;) {
            if (lex_.accept_op('*')) {
                v = v * unary();
            } else if (lex_.peek().is_op('/')) {
                std::size_t pos = lex_.take().pos;
                MultiPoly d = unary();
                if (d.degree() != 0) throw ParseError("can only divide by a nonzero constant", pos);
                v = v.scaled(d.terms().front().second.inverse());
            } else if (starts_primary()) {
                v = v * unary();
            } else {
                return v;
            }
        }
    }

    MultiPoly unary() {
        if (lex_.accept_op('-')) return -unary();
        if (lex_.accept_op('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (!lex_.accept_op('^')) return base;
        const auto& t = lex_.peek();
        if (t.kind != detail::Token::Kind::number || t.text.find('.') != std::string::npos)
            lex_.fail("expected a nonnegative integer exponent");
        return base.pow(std::stoi(lex_.take().text));
    }

    MultiPoly sigma(std::size_t pos) {
        lex_.expect_op('(');
        std::vector<int> lambda;
        int n = nvars_;
        do {
            if (lex_.peek().kind == detail::Token::Kind::ident && lex_.peek().text == "n") break;
            const auto& t = lex_.peek();
            if (t.kind != detail::Token::Kind::number) lex_.fail("expected a partition part");
            lambda.push_back(std::stoi(lex_.take().text));
        } while (lex_.accept_op(','));
        if (lex_.accept_op(';')) {
            const auto& t = lex_.peek();
            if (t.kind != detail::Token::Kind::ident || t.text != "n") lex_.fail("expected 'n='");
            lex_.take();
            lex_.expect_op('=');
            if (lex_.peek().kind != detail::Token::Kind::number) lex_.fail("expected variable count");
            n = std::stoi(lex_.take().text);
        }
        lex_.expect_op(')');
        if (n != nvars_) throw DimensionMismatch("arity mismatch: Sigma over " + std::to_string(n) + " variables in a " +
                                                 std::to_string(nvars_) + "-variable expression");
        if (lambda.empty()) throw ParseError("empty partition", pos);
        std::sort(lambda.rbegin(), lambda.rend());
        return msym(lambda, nvars_);
    }

    MultiPoly primary() {
        const auto& t = lex_.peek();
        if (t.kind == detail::Token::Kind::number)
            return MultiPoly::constant(nvars_, CycNum(detail::literal_value(lex_.take().text)));
        if (t.kind == detail::Token::Kind::ident) {
            std::size_t pos = t.pos;
            std::string name = lex_.take().text;
            if (name == "Sigma") return sigma(pos);
            if (auto it = env_.find(name); it != env_.end()) {
                if (it->second.nvars() != nvars_)
                    throw DimensionMismatch("arity mismatch: '" + name + "' has " + std::to_string(it->second.nvars()) +
                                            " variables, expected " + std::to_string(nvars_));
                return it->second;
            }
            if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
                int idx = std::stoi(name.substr(1));
                if (idx < 1 || idx > nvars_) throw ParseError("variable " + name + " out of range", pos);
                return MultiPoly::variable(nvars_, idx - 1);
            }
            static const std::map<std::string, CycNum> constants = {
                {"i", CycNum::imag_unit()}, {"w", CycNum::omega4()}, {"sqrt2", CycNum::sqrt2()},
                {"sqrt3", CycNum::sqrt3()}, {"z24", CycNum::zeta()},  {"z8", CycNum::zeta8()}};
            if (auto it = constants.find(name); it != constants.end()) return MultiPoly::constant(nvars_, it->second);
            throw ParseError("unknown name '" + name + "'", pos);
        }
        if (lex_.accept_op('(')) {
            MultiPoly v = expr();
            lex_.expect_op(')');
            return v;
        }
        lex_.fail("expected a number, name or '('");
    }

    detail::Lexer lex_;
    int nvars_;
    const PolyEnv& env_;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, int nvars, const PolyEnv& env) {
    return PolyParser(text, nvars, env).parse();
}

bool relation_check(std::string_view expr, int nvars, const PolyEnv& env) {
    return parse_polynomial(expr, nvars, env).is_zero();
}

bool jacobian_independent(const std::vector<MultiPoly>& fs, int tries, std::uint64_t seed) {
    if (fs.empty()) return true;
    const int n = fs.front().nvars();
    for (const auto& f : fs)
        if (f.nvars() != n) throw DimensionMismatch("arity mismatch in Jacobian");
    if (int(fs.size()) > n) return false;
    std::vector<std::vector<MultiPoly>> jac(fs.size());
    for (std::size_t r = 0; r < fs.size(); ++r)
        for (int v = 0; v < n; ++v) jac[r].push_back(fs[r].partial(v));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::vector<CycNum> point;
        for (int v = 0; v < n; ++v) {
            mpq_class q(num(rng), den(rng));
            q.canonicalize();
            point.emplace_back(q);
        }
        std::vector<std::vector<CycNum>> m(fs.size(), std::vector<CycNum>(n));
        for (std::size_t r = 0; r < fs.size(); ++r)
            for (int v = 0; v < n; ++v) m[r][v] = jac[r][v].evaluate(point);
        std::size_t rank = 0;
        for (int c = 0; c < n && rank < m.size(); ++c) {
            std::size_t piv = rank;
            while (piv < m.size() && m[piv][c].is_zero()) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[piv], m[rank]);
            for (std::size_t r = rank + 1; r < m.size(); ++r) {
                if (m[r][c].is_zero()) continue;
                CycNum f = m[r][c] / m[rank][c];
                for (int k = c; k < n; ++k) m[r][k] -= f * m[rank][k];
            }
            ++rank;
        }
        if (rank == fs.size()) return true;
    }
    return false;
}

}  // namespace quivar
