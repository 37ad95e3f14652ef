#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iqpow/ff_ideal.hpp"
#include "iqpow/instances.hpp"

using iqpow::Curve;
using iqpow::FfIdeal;
using iqpow::Method;
using iqpow::Poly;
using iqpow::parse_poly;

namespace {

Curve demo_curve() { return Curve(5, parse_poly("x^3+1", 5), Poly(5)); }

FfIdeal make(const Curve& c, const char* S, const char* Q, const char* P) {
    std::uint32_t p = c.p();
    return FfIdeal(c, parse_poly(S, p), parse_poly(Q, p), parse_poly(P, p));
}

/* a single draw can miss every point of a small field; retry as documented */
FfIdeal draw_prime(const Curve& c, std::mt19937_64& rng) {
    for (int t = 0; t < 200; ++t) {
        try {
            return iqpow::random_prime_ideal(c, rng());
        } catch (const iqpow::NoPointFound&) {
        }
    }
    throw iqpow::Error("no prime ideal found on a curve known to have points");
}

} // namespace

TEST_CASE("construction validates the norm divisibility invariant") {
    Curve c = demo_curve();
    CHECK_NOTHROW(make(c, "1", "x", "1"));
    CHECK_THROWS_AS(make(c, "1", "x", "2"), iqpow::IdealInvariantViolated);
    CHECK_THROWS_AS(make(c, "1", "0", "1"), iqpow::ZeroQ);
    CHECK_THROWS_AS(make(c, "0", "x", "1"), iqpow::IdealInvariantViolated);
}

TEST_CASE("construction absorbs units and reduces P") {
    Curve c = demo_curve();
    FfIdeal a = make(c, "2", "3*x", "1");
    CHECK(a.S() == Poly::one(5));
    CHECK(a.Q() == Poly::x(5));
    CHECK(a.P() == Poly::one(5));

    /* P is only defined mod Q */
    FfIdeal b = make(c, "1", "x", "x^3+1");
    CHECK(b == make(c, "1", "x", "1"));
    CHECK(b != make(c, "1", "x", "4"));
}

TEST_CASE("equality needs a common curve") {
    Curve c1 = demo_curve();
    Curve c2(5, parse_poly("x^3+2*x", 5), Poly(5));
    FfIdeal a = make(c1, "1", "x", "1");
    FfIdeal b = make(c2, "1", "x", "0");
    CHECK_THROWS_AS(a == b, iqpow::CurveMismatch);
    CHECK_THROWS_AS(a * b, iqpow::CurveMismatch);
    CHECK_THROWS_AS(hnf_mul(a, b), iqpow::CurveMismatch);
}

TEST_CASE("products match the module oracle on the worked examples") {
    Curve c = demo_curve();
    FfIdeal a = make(c, "1", "x", "1");

    FfIdeal sq = a * a;
    CHECK(sq == make(c, "1", "x^2", "1"));
    CHECK(hnf_mul(a, a) == sq);

    /* conjugate product: P1 + P2 - h = 0 mod 5, so the whole of Q divides out */
    FfIdeal conj = make(c, "1", "x", "4");
    FfIdeal prod = a * conj;
    CHECK(prod == make(c, "x", "1", "0"));
    CHECK(hnf_mul(a, conj) == prod);

    CHECK(a * FfIdeal::unit(c) == a);
    CHECK(hnf_mul(a, FfIdeal::unit(c)) == a);
}

TEST_CASE("bezout triple solves the three-generator identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        iqpow::FfInstance inst =
            iqpow::make_ff_instance(rng, iqpow::kCasePrimes[i % 5], 1 + i % 3);
        const Curve& c = inst.curve;
        Poly t = inst.ideal.P() + inst.ideal.P() - c.h();
        Poly q2 = iqpow::pow(inst.ideal.Q(), 2);
        auto bt = iqpow::bezout_triple(inst.ideal.Q(), q2, t);
        CHECK(bt.u * inst.ideal.Q() + bt.v * q2 + bt.w * t == bt.g);
        CHECK(bt.g.is_monic());
    }
}

TEST_CASE("step sequence of the worked example") {
    Curve c = demo_curve();
    auto tr = iqpow::power_trace(c, parse_poly("x", 5), parse_poly("1", 5), 3, false);
    CHECK(tr.v1() == Poly(5, {3}));
    CHECK(tr.u1().is_zero());
    CHECK(tr.ratio() == parse_poly("x^2", 5));
    CHECK(tr.step(1).is_zero());
    CHECK(tr.step(2) == Poly::one(5));
    CHECK(tr.step(3) == parse_poly("x^3+1", 5));

    /* reduced storage folds step(n) into the mod-Q^n residue */
    auto trr = iqpow::power_trace(c, parse_poly("x", 5), parse_poly("1", 5), 3, true);
    CHECK(trr.step(3) == Poly::one(5));
}

TEST_CASE("step recursion refuses non-coprime inputs") {
    Curve c(5, parse_poly("x^3+4*x", 5), Poly(5));
    /* (x, 0): 2P - h = 0 and gcd(x, 0) = x */
    CHECK_THROWS_AS(iqpow::power_trace(c, parse_poly("x", 5), Poly(5), 3),
                    iqpow::NonCoprime);
    FfIdeal a = make(c, "1", "x", "0");
    CHECK_THROWS_AS(iqpow::pow(a, 3, Method::recursive), iqpow::NonCoprime);
    /* ... but the generic routes still work */
    CHECK(iqpow::pow(a, 2, Method::repeated) == iqpow::pow(a, 2, Method::hnf));
}

TEST_CASE("exponent bounds") {
    Curve c = demo_curve();
    FfIdeal a = make(c, "1", "x", "1");
    CHECK_THROWS_AS(iqpow::pow(a, 0), iqpow::ExponentOutOfRange);
    CHECK_THROWS_AS(iqpow::pow(a, 1001), iqpow::ExponentOutOfRange);
    CHECK_THROWS_AS(iqpow::power_trace(c, Poly::x(5), Poly::one(5), 0),
                    iqpow::ExponentOutOfRange);
}

TEST_CASE("powering the worked example") {
    Curve c = demo_curve();
    FfIdeal a = make(c, "1", "x", "1");
    for (Method method : {Method::recursive, Method::repeated, Method::hnf}) {
        CHECK(iqpow::pow(a, 1, method) == a);
        CHECK(iqpow::pow(a, 2, method) == make(c, "1", "x^2", "1"));
        CHECK(iqpow::pow(a, 3, method) == make(c, "1", "x^3", "1"));
    }
}

TEST_CASE("recursive powering requires a primitive ideal") {
    Curve c = demo_curve();
    FfIdeal a = make(c, "x", "1", "0");
    CHECK_THROWS_AS(iqpow::pow(a, 2, Method::recursive), iqpow::NotPrimitive);
    CHECK(iqpow::pow(a, 2, Method::repeated) == make(c, "x^2", "1", "0"));
}

TEST_CASE("the three power methods agree on random instances") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(2024, i, 8);
        FfIdeal r1 = iqpow::pow(tc.ideal, tc.m, Method::recursive);
        FfIdeal r2 = iqpow::pow(tc.ideal, tc.m, Method::repeated);
        FfIdeal r3 = iqpow::pow(tc.ideal, tc.m, Method::hnf);
        CHECK(r1 == r2);
        CHECK(r2 == r3);
    }
}

TEST_CASE("formula product matches the oracle on random pairs") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 150; ++i) {
        iqpow::FfInstance inst =
            iqpow::make_ff_instance(rng, iqpow::kCasePrimes[i % 5], 1 + i % 3);
        FfIdeal b = draw_prime(inst.curve, rng);
        CHECK(inst.ideal * b == hnf_mul(inst.ideal, b));
        /* include a non-primitive operand: the conjugate-style product b*b */
        FfIdeal bb = hnf_mul(b, b);
        CHECK(inst.ideal * bb == hnf_mul(inst.ideal, bb));
    }
}

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937_64 rng(8080);
    for (int i = 0; i < 60; ++i) {
        iqpow::FfInstance inst = iqpow::make_ff_instance(rng, 7, 2);
        FfIdeal x = inst.ideal;
        FfIdeal y = draw_prime(inst.curve, rng);
        FfIdeal z = draw_prime(inst.curve, rng);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("reduced and unreduced recursions give the same ideals") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(555, i, 8);
        CHECK(iqpow::pow(tc.ideal, tc.m, Method::recursive, true) ==
              iqpow::pow(tc.ideal, tc.m, Method::recursive, false));
    }
}

TEST_CASE("reduced steps respect the degree bound") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(777, i, 8);
        auto tr = iqpow::power_trace(tc.curve, tc.ideal.Q(), tc.ideal.P(), tc.m, true);
        for (std::size_t n = 1; n <= tr.length(); ++n)
            CHECK(tr.step(n).degree() <
                  static_cast<int>(n) * tc.ideal.Q().degree());
    }
}

TEST_CASE("bezout identity holds at every recursion step") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(999, i, 8);
        const Curve& c = tc.curve;
        auto tr = iqpow::power_trace(c, tc.ideal.Q(), tc.ideal.P(), tc.m, true);
        Poly two_p_minus_h = tc.ideal.P() + tc.ideal.P() - c.h();
        for (std::size_t n = 1; n <= tr.length(); ++n) {
            Poly u = tr.u1() - tr.v1() * tr.v1() * tr.ratio() * tr.step(n);
            Poly w = tr.v1();
            Poly lhs = u * tc.ideal.Q() +
                       w * (two_p_minus_h + tr.v1() * tc.ideal.Q() * tr.ratio() * tr.step(n));
            CHECK(lhs == Poly::one(c.p()));
        }
    }
}

TEST_CASE("third step matches its closed form") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(4242, i, 8);
        const Curve& c = tc.curve;
        auto tr = iqpow::power_trace(c, tc.ideal.Q(), tc.ideal.P(), 3, false);
        Poly closed = Poly(c.p(), {2}) +
                      tr.v1() * (c.h() - (tc.ideal.P() + tc.ideal.P()) -
                                 tr.v1() * tc.ideal.Q() * tr.ratio());
        CHECK(tr.step(3) == closed);
        auto trr = iqpow::power_trace(c, tc.ideal.Q(), tc.ideal.P(), 3, true);
        Poly q3 = iqpow::pow(tc.ideal.Q(), 3);
        CHECK(trr.step(3) == closed % q3);
    }
}

TEST_CASE("power composition law up to exponent 64") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        iqpow::FfCase tc = iqpow::make_ff_case(64646, i, 1);
        FfIdeal a = tc.ideal;
        FfIdeal a64 = iqpow::pow(a, 64, Method::recursive);
        FfIdeal a8 = iqpow::pow(a, 8, Method::recursive);
        CHECK(a64 == iqpow::pow(a8, 8, Method::recursive));
        FfIdeal a16 = iqpow::pow(a, 16, Method::recursive);
        CHECK(a64 == iqpow::pow(a16, 4, Method::recursive));
    }
}

TEST_CASE("random prime ideals are deterministic and valid") {
    Curve c = demo_curve();
    FfIdeal a = iqpow::random_prime_ideal(c, 42);
    FfIdeal b = iqpow::random_prime_ideal(c, 42);
    CHECK(a == b);
    CHECK(a.primitive());
    CHECK(a.Q().degree() == 1);
    /* y^2 = 1 over F_5 has roots {1, 4}: both primes above x = 0 are valid */
    CHECK(make(c, "1", "x", "1") != make(c, "1", "x", "4"));
}

TEST_CASE("pointless curve exhausts the draw budget") {
    /* y^2 + y = x^3+x+1 over F_2 has no affine point */
    Curve c(2, parse_poly("x^3+x+1", 2), Poly::one(2));
    CHECK_THROWS_AS(iqpow::random_prime_ideal(c, 1), iqpow::NoPointFound);
}
