#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iqpow/poly.hpp"

using iqpow::Poly;
using iqpow::parse_poly;
using iqpow::to_string;

namespace {

Poly random_poly(std::mt19937_64& rng, std::uint32_t p, int max_deg) {
    Poly r(p);
    int deg = static_cast<int>(rng() % (max_deg + 1));
    for (int d = 0; d <= deg; ++d)
        r += Poly::monomial(p, static_cast<std::int64_t>(rng() % p), d);
    return r;
}

} // namespace

TEST_CASE("arithmetic examples over F_5") {
    Poly xp1(5, {1, 1}), xp4(5, {4, 1});
    CHECK(xp1 + xp4 == Poly(5, {0, 2}));
    CHECK(xp1 * Poly(5, {-1, 1}) == Poly(5, {4, 0, 1}));
    CHECK(Poly(5) * Poly(5, {1, 0, 0, 1}) == Poly(5));
    CHECK_THROWS_AS(Poly(5, {1}) + Poly(7, {1}), iqpow::ModulusMismatch);
}

TEST_CASE("degree bookkeeping") {
    CHECK(Poly(5).degree() == iqpow::kNegInfDeg);
    CHECK(Poly(5, {3}).degree() == 0);
    CHECK(Poly(5, {0, 0, 5}).is_zero()); /* 5 = 0 mod 5, trailing zeros trimmed */
    Poly a(5, {1, 2}), b(5, {0, 3});
    CHECK((a * b).degree() == a.degree() + b.degree());
}

TEST_CASE("division examples") {
    Poly x3p1(5, {1, 0, 0, 1});
    auto [q1, r1] = divrem(x3p1, Poly::x(5));
    CHECK(q1 == Poly(5, {0, 0, 1}));
    CHECK(r1 == Poly(5, {1}));

    auto [q2, r2] = divrem(x3p1, Poly(5, {1, 1}));
    CHECK(q2 == Poly(5, {1, 4, 1}));
    CHECK(r2.is_zero());

    auto [q3, r3] = divrem(Poly::x(5), Poly(5, {0, 0, 1}));
    CHECK(q3.is_zero());
    CHECK(r3 == Poly::x(5));

    CHECK_THROWS_AS(divrem(x3p1, Poly(5)), iqpow::DivisionByZero);
}

TEST_CASE("xgcd examples and tie-breaks") {
    auto e1 = xgcd(Poly::x(5), Poly(5, {2}));
    CHECK(e1.g == Poly::one(5));
    CHECK(e1.u.is_zero());
    CHECK(e1.v == Poly(5, {3}));

    auto e2 = xgcd(Poly(5, {4, 0, 1}), Poly(5, {1, 1}));
    CHECK(e2.g == Poly(5, {1, 1}));
    CHECK(e2.u.is_zero());
    CHECK(e2.v == Poly::one(5));

    auto e3 = xgcd(Poly::x(5), Poly::x(5));
    CHECK(e3.g == Poly::x(5));
    CHECK(e3.u.is_zero());
    CHECK(e3.v == Poly::one(5));

    CHECK_THROWS_AS(xgcd(Poly(5), Poly(5)), iqpow::BothZero);
}

TEST_CASE("xgcd contract on random pairs") {
    std::mt19937_64 rng(1234);
    for (std::uint32_t p : {2u, 3u, 13u, 1048573u}) {
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(rng, p, 6), b = random_poly(rng, p, 6);
            if (a.is_zero() && b.is_zero()) continue;
            auto e = xgcd(a, b);
            CHECK(e.u * a + e.v * b == e.g);
            CHECK(e.g.is_monic());
            if (!a.is_zero()) CHECK((a % e.g).is_zero());
            if (!b.is_zero()) CHECK((b % e.g).is_zero());
        }
    }
}

TEST_CASE("divrem contract on random pairs") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 400; ++i) {
        Poly a = random_poly(rng, 7, 8), b = random_poly(rng, 7, 5);
        if (b.is_zero()) continue;
        auto [q, r] = divrem(a, b);
        CHECK(a - (q * b + r) == Poly(7));
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("parser examples") {
    CHECK(parse_poly("x^3+1", 5) == Poly(5, {1, 0, 0, 1}));
    CHECK(parse_poly("x^2 + 4*x^2", 5).is_zero());
    CHECK(parse_poly("3*x+4", 5) == Poly(5, {4, 3}));
    CHECK(parse_poly("0", 5).is_zero());
    CHECK(parse_poly("x", 5) == Poly::x(5));
    CHECK(parse_poly("x ^ 2", 5) == Poly(5, {0, 0, 1}));
    CHECK(parse_poly("x^0", 5) == Poly::one(5));
    CHECK(parse_poly("x+x+x+x+x", 5).is_zero());
    CHECK(parse_poly("12", 5) == Poly(5, {2}));
    CHECK(parse_poly("2x", 5) == Poly(5, {0, 2})); /* the '*' is optional */
    CHECK(parse_poly("x^3 - x", 5) == Poly(5, {0, 4, 0, 1}));
}

TEST_CASE("parser rejections carry the byte offset") {
    try {
        parse_poly("x^^2", 5);
        FAIL("expected ParseError");
    } catch (const iqpow::ParseError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(parse_poly("", 5), iqpow::ParseError);
    CHECK_THROWS_AS(parse_poly("3*", 5), iqpow::ParseError);
    CHECK_THROWS_AS(parse_poly("x+", 5), iqpow::ParseError);
    CHECK_THROWS_AS(parse_poly("y", 5), iqpow::ParseError);
    CHECK_THROWS_AS(parse_poly("x^999999999", 5), iqpow::ParseError);
}

TEST_CASE("formatter examples") {
    CHECK(to_string(Poly(5, {1, 0, 0, 1})) == "x^3+1");
    CHECK(to_string(Poly(5)) == "0");
    CHECK(to_string(Poly(5, {4, 3})) == "3*x+4");
    CHECK(to_string(Poly::x(5)) == "x");
    CHECK(to_string(Poly(7, {0, 1, 6})) == "6*x^2+x");
}

TEST_CASE("format/parse round trip on random polynomials") {
    std::mt19937_64 rng(4321);
    for (std::uint32_t p : {2u, 3u, 13u, 65537u}) {
        for (int i = 0; i < 250; ++i) {
            Poly a = random_poly(rng, p, 12);
            CHECK(parse_poly(to_string(a), p) == a);
        }
    }
}

TEST_CASE("pow and eval helpers") {
    Poly q(5, {3, 1}); /* x+3 */
    CHECK(iqpow::pow(q, 0) == Poly::one(5));
    CHECK(iqpow::pow(q, 3) == q * q * q);
    CHECK(Poly(5, {1, 0, 0, 1}).eval(2) == (8 + 1) % 5);
    CHECK(Poly(5).eval(3) == 0);
}
