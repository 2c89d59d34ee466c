#include <cmath>
#include <random>

#include "doctest.h"
#include "gates.hpp"
#include "oracle.hpp"
#include "quivar/errors.hpp"
#include "quivar/qgeom.hpp"

using namespace quivar;

namespace {

std::mt19937_64 rng(11);

cplx rand_c() {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

QuartitState random_state() { return normalized(QuartitState{rand_c(), rand_c(), rand_c(), rand_c()}); }

QuartitState product_state() {
    const QubitState a = normalized(QubitState{rand_c(), rand_c()});
    const QubitState b = normalized(QubitState{rand_c(), rand_c()});
    return {a.alpha * b.alpha, a.alpha * b.beta, a.beta * b.alpha, a.beta * b.beta};
}

CycNum C(const char* s) { return parse_cyclotomic(s); }

}  // namespace

TEST_CASE("bloch map poles and equator") {
    const double r = 1 / std::sqrt(2.0);
    BlochVector n = bloch_map({1, 0});
    CHECK(n.xi == doctest::Approx(0));
    CHECK(n.zeta == doctest::Approx(1));
    BlochVector e = bloch_map({r, r});
    CHECK(e.xi == doctest::Approx(1));
    CHECK(e.eta == doctest::Approx(0));
    CHECK(e.zeta == doctest::Approx(0));
    CHECK_THROWS_AS(bloch_map({1, 1}), NotNormalized);
}

TEST_CASE("bloch map is phase invariant and lands on the sphere") {
    for (int k = 0; k < 1000; ++k) {
        QubitState s = normalized(QubitState{rand_c(), rand_c()});
        BlochVector b = bloch_map(s);
        CHECK(std::abs(b.norm() - 1) < 1e-12);
        const cplx ph = std::polar(1.0, std::uniform_real_distribution<double>(0, 6.28)(rng));
        BlochVector c = bloch_map({ph * s.alpha, ph * s.beta});
        CHECK(std::abs(b.xi - c.xi) + std::abs(b.eta - c.eta) + std::abs(b.zeta - c.zeta) < 1e-12);
    }
}

TEST_CASE("stereographic projection") {
    CHECK(stereographic({0, 0, 1}).is_infinity());
    CHECK(stereographic({1, 0, 0}).same_point({1, 1}));
    CHECK(stereographic({-1, 0, 0}).same_point({-1, 1}));
    CHECK(stereographic({0, 0, -1}).same_point({0, 1}));
    // s = (xi + i eta)/(1 - zeta) directly, away from the pole
    for (int k = 0; k < 100; ++k) {
        BlochVector b = bloch_map(normalized(QubitState{rand_c(), rand_c()}));
        RiemannPoint r = stereographic(b);
        if (b.zeta < 0.9) {
            const cplx s = cplx(b.xi, b.eta) / (1 - b.zeta);
            CHECK(std::abs(r.value() - s) < 1e-10 * (1 + std::abs(s)));
        }
        BlochVector back = inverse_stereographic(r);
        CHECK(std::abs(back.xi - b.xi) + std::abs(back.eta - b.eta) + std::abs(back.zeta - b.zeta) < 1e-10);
    }
    BlochVector pole = inverse_stereographic({1, 0});
    CHECK(pole.zeta == doctest::Approx(1));
}

TEST_CASE("second Hopf map") {
    S4Point p = second_hopf({1, 0, 0, 0});
    CHECK(p.zeta == doctest::Approx(1));
    CHECK(p.xi == doctest::Approx(0));
    CHECK(p.u == doctest::Approx(0));

    const double r = 1 / std::sqrt(2.0);
    S4Point bell = second_hopf({r, 0, 0, r});
    CHECK(std::abs(bell.xi) < 1e-12);
    CHECK(std::abs(bell.eta) < 1e-12);
    CHECK(std::abs(bell.zeta) < 1e-12);
    CHECK(bell.u == doctest::Approx(1));
    CHECK(std::abs(bell.v) < 1e-12);

    // |+> (x) |0> = (|00> + |10>)/sqrt2
    S4Point plus0 = second_hopf({r, 0, r, 0});
    CHECK(std::abs(plus0.u) < 1e-12);
    CHECK(std::abs(plus0.v) < 1e-12);

    for (int k = 0; k < 1000; ++k) CHECK(std::abs(second_hopf(random_state()).norm() - 1) < 1e-12);
}

TEST_CASE("second Hopf map from quaternion products") {
    // 2 Q2 conj(Q1) = (xi + i eta) + (u + i v) j, |Q1|^2 - |Q2|^2 = zeta
    for (int k = 0; k < 200; ++k) {
        QuartitState s = random_state();
        auto [q1, q2] = quaternion_pair(s);
        Quaternion w = q2 * q1.conj();
        S4Point p = second_hopf(s);
        CHECK(std::abs(2 * w.w - p.xi) < 1e-12);
        CHECK(std::abs(2 * w.x - p.eta) < 1e-12);
        CHECK(std::abs(2 * w.y - p.u) < 1e-12);
        CHECK(std::abs(2 * w.z - p.v) < 1e-12);
        CHECK(std::abs(q1.norm() * q1.norm() - q2.norm() * q2.norm() - p.zeta) < 1e-12);
    }
}

TEST_CASE("quaternion algebra") {
    Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    auto eq = [](Quaternion a, Quaternion b) {
        return std::abs(a.w - b.w) + std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z) < 1e-15;
    };
    Quaternion m1{-1, 0, 0, 0};
    CHECK(eq(i * i, m1));
    CHECK(eq(j * j, m1));
    CHECK(eq(k * k, m1));
    CHECK(eq(i * j, k));
    CHECK(eq(j * k, i));
    CHECK(eq(k * i, j));
    CHECK(eq(j * i, Quaternion{0, 0, 0, -1}));
    CHECK(eq(one * k, k));
    // a + b j with complex a, b: j z = conj(z) j
    Quaternion z = Quaternion::from_pair({0.3, 0.7}, 0);
    CHECK(eq(j * z, Quaternion::from_pair({0.3, -0.7}, 0) * j));
    for (int n = 0; n < 100; ++n) {
        Quaternion a{rand_c().real(), rand_c().real(), rand_c().imag(), rand_c().imag()};
        Quaternion b{rand_c().real(), rand_c().real(), rand_c().imag(), rand_c().imag()};
        CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) < 1e-12 * (1 + a.norm() * b.norm()));
    }
}

TEST_CASE("fiber invariance under right multiplication") {
    for (int n = 0; n < 200; ++n) {
        QuartitState s = random_state();
        auto [q1, q2] = quaternion_pair(s);
        Quaternion u{rand_c().real(), rand_c().imag(), rand_c().real(), rand_c().imag()};
        const double nu = u.norm();
        u = {u.w / nu, u.x / nu, u.y / nu, u.z / nu};
        QuartitState t = from_quaternion_pair(q1 * u, q2 * u);
        S4Point a = second_hopf(s), b = second_hopf(t);
        CHECK(std::abs(a.xi - b.xi) + std::abs(a.eta - b.eta) + std::abs(a.u - b.u) + std::abs(a.v - b.v) +
                  std::abs(a.zeta - b.zeta) <
              1e-10);
    }
}

TEST_CASE("entanglement and the u = v = 0 locus") {
    const double r = 1 / std::sqrt(2.0);
    CHECK(entanglement({r, 0, 0, r}).c == doctest::Approx(1));
    CHECK_FALSE(entanglement({r, 0, 0, r}).separable);
    for (int n = 0; n < 300; ++n) {
        QuartitState p = product_state();
        Entanglement e = entanglement(p);
        CHECK(e.separable);
        S4Point h = second_hopf(p);
        CHECK(std::abs(h.u) + std::abs(h.v) < 1e-10);

        QuartitState q = random_state();
        S4Point hq = second_hopf(q);
        CHECK((std::hypot(hq.u, hq.v) < 1e-10) == entanglement(q).separable);
        CHECK(entanglement(q).c <= 1 + 1e-12);
    }
}

TEST_CASE("rows of S are maximally entangled") {
    const CycMatrix s = gates::S();
    for (int r = 0; r < 4; ++r) {
        std::vector<CycNum> row{s.at(r, 0), s.at(r, 1), s.at(r, 2), s.at(r, 3)};
        CHECK(concurrence(row) == doctest::Approx(1).epsilon(1e-12));
        QuartitState q{oracle::eval(row[0]), oracle::eval(row[1]), oracle::eval(row[2]), oracle::eval(row[3])};
        CHECK(entanglement(q).c == doctest::Approx(1).epsilon(1e-12));
    }
}

TEST_CASE("root polynomial of the octahedron vertices") {
    std::vector<ExactPoint> pts{{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {C("i"), 1}, {C("-i"), 1}};
    MultiPoly f = root_polynomial(pts);
    CHECK(f.is_homogeneous());
    CHECK(f.degree() == 6);
    MultiPoly t = parse_polynomial("x1*x2*(x2^4 - x1^4)", 2);
    auto lam = proportional(f, t);
    REQUIRE(lam.has_value());
    CHECK((*lam == CycNum(1) || *lam == CycNum(-1)));
    // vanishes at each point (alpha, beta) = (p, q)
    for (const auto& p : pts) {
        std::vector<CycNum> v{p.p, p.q};
        CHECK(f.evaluate(v).is_zero());
    }
    std::vector<CycNum> off{2, 1};
    CHECK_FALSE(f.evaluate(off).is_zero());
}

TEST_CASE("root polynomial of the tetrahedron vertices") {
    std::vector<ExactPoint> pts{{C("1+i"), C("sqrt3-1")},
                                {C("1-i"), C("sqrt3+1")},
                                {C("-1+i"), C("sqrt3+1")},
                                {C("-1-i"), C("sqrt3-1")}};
    MultiPoly f = root_polynomial(pts);
    CHECK(f.degree() == 4);
    MultiPoly upper = parse_polynomial("x1^4 + 2*i*sqrt3*x1^2*x2^2 + x2^4", 2);
    MultiPoly lower = parse_polynomial("x1^4 - 2*i*sqrt3*x1^2*x2^2 + x2^4", 2);
    const bool up = proportional(f, upper).has_value();
    const bool lo = proportional(f, lower).has_value();
    CHECK(up != lo);
    // floating check of the roots against the printed fractions
    for (const auto& p : pts) {
        std::vector<cplx> v{oracle::eval(p.p), oracle::eval(p.q)};
        CHECK(std::abs(f.evaluate(v)) < 1e-10);
    }
    MESSAGE("tetrahedron root polynomial matches the " << (up ? "upper" : "lower") << " sign");
}

TEST_CASE("single point") {
    std::vector<ExactPoint> pts{{1, 0}};
    CHECK(root_polynomial(pts) == parse_polynomial("-x2", 2));
}

TEST_CASE("SIC overlaps") {
    const double s3 = std::sqrt(3.0);
    const cplx a = std::sqrt(0.5) * std::sqrt(1 + 1 / s3);
    const cplx b = std::sqrt(0.5) * std::polar(1.0, M_PI / 4) * std::sqrt(1 - 1 / s3);
    auto o = sic_overlaps(a, b);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(std::abs(o[x][y] - (x == y ? 1.0 : 1.0 / 3)) < 1e-12);
    auto d = sic_overlaps(1, 0);
    CHECK(d[0][3] == doctest::Approx(1));
}

TEST_CASE("E8 membership") {
    std::vector<mpq_class> v(8, 0);
    v[0] = v[1] = 1;
    CHECK(e8_member(v));
    v[1] = 0;
    CHECK_FALSE(e8_member(v));
    std::vector<mpq_class> h(8, mpq_class(1, 2));
    CHECK(e8_member(h));
    h[0] = mpq_class(-1, 2);
    CHECK_FALSE(e8_member(h));  // sum 3
    h[1] = mpq_class(-1, 2);
    CHECK(e8_member(h));
    h[2] = 1;
    CHECK_FALSE(e8_member(h));  // mixed
}

TEST_CASE("E8 basis is unimodular and in the lattice") {
    CHECK(e8_gram_det() == 1);
    for (const auto& b : e8_basis()) CHECK(e8_member(b));
}

TEST_CASE("U36 generators preserve E8") {
    CHECK(e8_preserved(gates::X8()));
    CHECK(e8_preserved(gates::IIsz()));
    CHECK(e8_preserved(gates::S3()));
    // a sign flip on one coordinate breaks the even-sum rule for the glue vector
    std::vector<CycNum> d(8, CycNum(1));
    d[0] = -1;
    CHECK_FALSE(e8_preserved(CycMatrix::diagonal(d)));
    CHECK_THROWS(e8_preserved(CycMatrix::identity(8).scaled(2)));
    CHECK_THROWS_AS(e8_preserved(CycMatrix::identity(4)), DimensionMismatch);
}

TEST_CASE("null space") {
    CycMatrix m = parse_matrix("1,2,3; 2,4,6");
    auto ns = null_space(m);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
        CycNum s = v[0] + 2 * v[1] + 3 * v[2];
        CHECK(s.is_zero());
    }
    CHECK(null_space(CycMatrix::identity(3)).empty());
}

TEST_CASE("joint eigenbasis of the Bell triple") {
    using gates::sx, gates::sy, gates::sz;
    std::vector<CycMatrix> triple{kron(sx(), sx()), kron(sy(), sy()), kron(sz(), sz())};
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK((triple[a] * triple[b] - triple[b] * triple[a]).is_zero());
    EigenbasisReport rep = eigenbasis_relation(gates::S(), triple);
    CHECK(rep.commuting);
    CHECK(rep.nondegenerate);
    REQUIRE(rep.eigenvectors.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(concurrence(rep.eigenvectors[k]) == doctest::Approx(1).epsilon(1e-12));
        // A v = lambda v for each operator
        for (std::size_t a = 0; a < 3; ++a)
            for (int r = 0; r < 4; ++r) {
                CycNum lhs;
                for (int c = 0; c < 4; ++c) lhs += triple[a].at(r, c) * rep.eigenvectors[k][c];
                CHECK(lhs == rep.eigenvalues[k][a] * rep.eigenvectors[k][r]);
            }
    }
    MESSAGE("S vs Bell triple: " << rep.to_string());
    CHECK_FALSE(rep.columns_match);  // S has separable columns

    std::vector<CycMatrix> bad{kron(sx(), gates::I2()), kron(sz(), gates::I2())};
    CHECK_THROWS(eigenbasis_relation(gates::S(), bad));
}

TEST_CASE("octit triple") {
    using gates::sx, gates::sy, gates::sz;
    std::vector<CycMatrix> triple{kron(sz(), kron(sx(), sx())), kron(sz(), kron(sy(), sy())),
                                  kron(sz(), kron(sz(), sz()))};
    EigenbasisReport rep = eigenbasis_relation(gates::S3(), triple);
    CHECK(rep.eigenvectors.size() == 8);
    MESSAGE("S3 vs octit triple: " << rep.to_string());
}
