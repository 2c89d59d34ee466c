#include "doctest.h"
#include "oracle.hpp"

#include <cmath>
#include <limits>

using quivar::CycNum;
using quivar::parse_cyclotomic;

TEST_CASE("parse basic literals") {
    CycNum a = parse_cyclotomic("(1-i)/2");
    CHECK(a.coord(0) == mpq_class(1, 2));
    CHECK(a.coord(6) == mpq_class(-1, 2));
    for (int k : {1, 2, 3, 4, 5, 7}) CHECK(a.coord(k) == 0);
    CHECK(parse_cyclotomic("0.25") == CycNum(mpq_class(1, 4)));
    CHECK(parse_cyclotomic("2 sqrt2") == parse_cyclotomic("2*sqrt2"));
    CHECK(parse_cyclotomic("z24^-1") == CycNum::zeta().inverse());
}

TEST_CASE("named constants") {
    CHECK(parse_cyclotomic("sqrt2*sqrt2") == CycNum(2));
    CHECK(parse_cyclotomic("sqrt3^2") == CycNum(3));
    CHECK(parse_cyclotomic("w^4").is_one());
    CHECK(parse_cyclotomic("i^2") == CycNum(-1));
    CHECK(parse_cyclotomic("z8^8").is_one());
    CHECK(parse_cyclotomic("z24^24").is_one());
    CHECK(parse_cyclotomic("z24^3 * z24^9") == CycNum(-1));
    CHECK(oracle::close(CycNum::sqrt2().embed(), std::sqrt(2.0)));
    CHECK(oracle::close(CycNum::sqrt3().embed(), std::sqrt(3.0)));
    CHECK(oracle::close(CycNum::zeta8().embed(), std::polar(1.0, M_PI / 4)));
}

TEST_CASE("arithmetic against hand values") {
    CycNum one_i = parse_cyclotomic("1+i"), one_mi = parse_cyclotomic("1-i");
    CHECK(one_i * one_mi == CycNum(2));
    CHECK(CycNum(1) / one_i == parse_cyclotomic("(1-i)/2"));
    CHECK(one_i.conj() == one_mi);
    CHECK(CycNum::zeta().conj() == CycNum::zeta_power(23));
    CHECK(parse_cyclotomic("z24 + z24^-1") .is_real());
    CHECK_THROWS_AS(CycNum(1) / CycNum(0), quivar::DivisionByZero);
}

TEST_CASE("field axioms and embedding homomorphism") {
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 300; ++t) {
        CycNum a = oracle::random_cyc(rng), b = oracle::random_cyc(rng), c = oracle::random_cyc(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == CycNum(0));
        CHECK(oracle::close(oracle::eval(a * b), oracle::eval(a) * oracle::eval(b)));
        CHECK(oracle::close(oracle::eval(a.conj()), std::conj(oracle::eval(a))));
        CHECK(oracle::close(a.embed(), oracle::eval(a)));
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == CycNum(1));
            CHECK((b / a) * a == b);
        }
        CHECK(parse_cyclotomic(a.to_string()) == a);
        CHECK((a == b) == (a.canonical_bytes() == b.canonical_bytes()));
    }
}

TEST_CASE("overflow promotes to GMP and demotes back") {
    CycNum big = CycNum(std::numeric_limits<std::int64_t>::max());
    CycNum sq = big * big * big;
    CHECK_FALSE(sq.is_small());
    CycNum back = sq / (big * big);
    CHECK(back == big);
    CHECK(back.is_small());
    CycNum x = parse_cyclotomic("1 + z24 + 3/7 z24^5");
    CycNum p = x.pow(60);
    CHECK(p * x.pow(-60) == CycNum(1));
    CHECK(oracle::close(oracle::eval(x.pow(7)), std::pow(oracle::eval(x), 7)));
}

TEST_CASE("canonical bytes layout") {
    auto bytes = CycNum(mpq_class(-3, 4)).canonical_bytes();
    // coordinate 0: sign 2, num len 1 byte 3, den len 1 byte 4
    REQUIRE(bytes.size() >= 11);
    CHECK(bytes[0] == 2);
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 3);
    CHECK(bytes[9] == 1);
    CHECK(bytes[10] == 4);
    CHECK(bytes[11] == 0);  // coordinate 1 is zero
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_cyclotomic("1 + foo");
        FAIL("expected ParseError");
    } catch (const quivar::ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_cyclotomic("1/(i-i)"), quivar::ParseError);
    CHECK_THROWS_AS(parse_cyclotomic("(1+2"), quivar::ParseError);
    CHECK_THROWS_AS(parse_cyclotomic(""), quivar::ParseError);
}
