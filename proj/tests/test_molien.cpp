#include "doctest.h"
#include "gates.hpp"
#include "oracle.hpp"

#include <cmath>

#include "quivar/molien.hpp"

using namespace quivar;

namespace {

using cplx = std::complex<double>;

cplx leibniz_det(const std::vector<std::vector<cplx>>& m) {
    const int n = int(m.size());
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k;
    cplx total = 0;
    do {
        int inv = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) inv += p[a] > p[b];
        cplx prod = 1;
        for (int k = 0; k < n; ++k) prod *= m[k][p[k]];
        total += (inv % 2 ? -1.0 : 1.0) * prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Oracle: det(I - tg) from principal minors in doubles, then a floating
// series average rounded to integers.
std::vector<long long> float_molien(const FiniteMatrixGroup& g, int order) {
    std::vector<cplx> sum(order + 1, 0);
    for (const auto& el : g.elements()) {
        const int n = el.rows();
        std::vector<cplx> d(n + 1, 0);
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> idx;
            for (int k = 0; k < n; ++k)
                if (mask >> k & 1) idx.push_back(k);
            std::vector<std::vector<cplx>> sub(idx.size(), std::vector<cplx>(idx.size()));
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = oracle::eval(el.at(idx[r], idx[c]));
            cplx minor = idx.empty() ? cplx(1) : leibniz_det(sub);
            d[idx.size()] += (idx.size() % 2 ? -1.0 : 1.0) * minor;
        }
        std::vector<cplx> s(order + 1, 0);
        s[0] = 1;
        for (int m = 1; m <= order; ++m)
            for (int k = 1; k <= n && k <= m; ++k) s[m] -= d[k] * s[m - k];
        for (int m = 0; m <= order; ++m) sum[m] += s[m];
    }
    std::vector<long long> out;
    for (auto v : sum) {
        double x = v.real() / double(g.order());
        CHECK(std::abs(x - std::round(x)) < 1e-6);
        CHECK(std::abs(v.imag()) < 1e-6 * double(g.order()));
        out.push_back(std::llround(x));
    }
    return out;
}

std::vector<long long> as_ll(const MolienSeries& s) {
    std::vector<long long> v;
    for (const auto& c : s.coefficients) v.push_back(c.get_num().get_si());
    return v;
}

long long count_partitions(int n, const std::vector<int>& parts, std::size_t k = 0) {
    if (n == 0) return 1;
    if (k == parts.size()) return 0;
    long long total = 0;
    for (int use = 0; use * parts[k] <= n; ++use) total += count_partitions(n - use * parts[k], parts, k + 1);
    return total;
}

}  // namespace

TEST_CASE("det(I - tM) by Faddeev-LeVerrier") {
    auto d = det_one_minus_t(gates::P());
    // (1 - t)(1 - i t) = 1 - (1+i) t + i t^2
    CHECK(d[0] == CycNum(1));
    CHECK(d[1] == parse_cyclotomic("-(1+i)"));
    CHECK(d[2] == CycNum::imag_unit());
}

TEST_CASE("trivial group gives binomial coefficients") {
    auto g = closure({CycMatrix::identity(3)});
    auto s = molien_series(g, 10);
    for (int d = 0; d <= 10; ++d) CHECK(s.coefficients[d] == (d + 2) * (d + 1) / 2);
}

TEST_CASE("molien series agrees with the floating oracle") {
    for (auto gens : {std::vector<CycMatrix>{gates::Oa(), gates::Ob()}, std::vector<CycMatrix>{gates::P(), gates::Ob()},
                      std::vector<CycMatrix>{gates::H(), gates::P()}}) {
        auto g = closure(gens);
        CHECK(as_ll(molien_series(g, 30)) == float_molien(g, 30));
    }
}

TEST_CASE("thread count does not change the series") {
    auto g = closure({gates::H(), gates::P()});
    auto a = molien_series(g, 40, 1), b = molien_series(g, 40, 3);
    CHECK(a.coefficients == b.coefficients);
}

TEST_CASE("closed form expansion") {
    auto f = parse_closed_form("1/((1-t^8)(1-t^12))");
    auto s = expand_closed_form(f, 24);
    for (int d = 0; d <= 24; ++d) CHECK(s.coefficients[d] == mpq_class(static_cast<long>(count_partitions(d, {8, 12}))));
    CHECK(s.coefficients[24] == 2);
    auto bad = expand_closed_form(parse_closed_form("(1-t^4+t^8)/((1-t^6)(1-t^8))"), 8);
    CHECK(bad.coefficients[4] == -1);
    auto ones = expand_closed_form(parse_closed_form("1/(1-t)"), 5);
    for (auto& c : ones.coefficients) CHECK(c == 1);
    auto sq = parse_closed_form("1 / (1-t^2)^2");
    CHECK(expand_closed_form(sq, 6).coefficients[6] == 4);
    CHECK(parse_closed_form(f.to_string()).denominator == f.denominator);
    CHECK_THROWS_AS(parse_closed_form("2/(1-t)"), ParseError);
    CHECK_THROWS_AS(parse_closed_form("1/(1+t)"), ParseError);
}

TEST_CASE("comparison reports the first mismatch") {
    auto o = closure({gates::Oa(), gates::Ob()});
    auto cmp = molien_compare(o, parse_closed_form("(1-t^4+t^8)/((1-t^6)(1-t^8))"), 30);
    CHECK_FALSE(cmp.match);
    REQUIRE(cmp.first_mismatch);
    CHECK(*cmp.first_mismatch == 4);
    auto u8 = closure({gates::P(), gates::Ob()});
    CHECK(molien_compare(u8, parse_closed_form("1/((1-t^8)(1-t^12))"), 30).match);
    auto c1 = closure({gates::H(), gates::P()});
    CHECK(molien_compare(c1, parse_closed_form("1/((1-t^8)(1-t^24))"), 30).match);
}

TEST_CASE("degree products") {
    std::vector<long long> e8{2, 8, 12, 14, 18, 20, 24, 30};
    CHECK(degrees_product(e8) == 696729600);
    std::vector<long long> u31{8, 12, 20, 24};
    CHECK(degrees_product(u31) == 46080);
    std::vector<long long> u9{8, 24};
    CHECK(degrees_product(u9) == 192);
}
