#ifndef IQPOW_FF_IDEAL_HPP
#define IQPOW_FF_IDEAL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "iqpow/common.hpp"
#include "iqpow/curve.hpp"
#include "iqpow/poly.hpp"

namespace iqpow {

/* Unreduced step polynomials double in degree at every iteration; refuse to
 * grow past this rather than exhaust memory. */
inline constexpr int kMaxStepDegree = 1 << 20;

/* Integral ideal of the maximal order of F_p(x)[y]/(y^2 + hy - f), stored as
 * the module  S*Q*F_p[x] + S*(P + y)*F_p[x].
 *
 * Canonical form: S and Q monic, deg P < deg Q, and Q | f + h*P - P^2.
 * Unit factors are absorbed on construction, so equality of ideals is
 * componentwise equality of the triples. */
class FfIdeal {
  public:
    FfIdeal(const Curve& curve, Poly S, Poly Q, Poly P)
        : curve_(curve), s_(std::move(S)), q_(std::move(Q)), p_(std::move(P)) {
        if (s_.modulus() != curve_.p() || q_.modulus() != curve_.p() ||
            p_.modulus() != curve_.p())
            throw ModulusMismatch("ideal components not over the curve's field");
        if (q_.is_zero()) throw ZeroQ("Q must be nonzero");
        if (s_.is_zero()) throw IdealInvariantViolated("S must be nonzero");
        s_ = s_.monic();
        q_ = q_.monic();
        p_ = p_ % q_;
        Poly norm_num = curve_.f() + curve_.h() * p_ - p_ * p_;
        if (!(norm_num % q_).is_zero())
            throw IdealInvariantViolated("Q does not divide f + h*P - P^2");
    }

    static FfIdeal unit(const Curve& curve) {
        const std::uint32_t p = curve.p();
        return FfIdeal(curve, Poly::one(p), Poly::one(p), Poly(p));
    }

    const Curve& curve() const { return curve_; }
    const Poly& S() const { return s_; }
    const Poly& Q() const { return q_; }
    const Poly& P() const { return p_; }

    bool primitive() const { return s_.is_one(); }
    bool is_unit() const { return s_.is_one() && q_.is_one(); }

    /* (f + h*P - P^2) / Q, exact by the constructor invariant. */
    Poly norm_ratio() const {
        return (curve_.f() + curve_.h() * p_ - p_ * p_) / q_;
    }

    bool operator==(const FfIdeal& o) const {
        if (curve_ != o.curve_) throw CurveMismatch("ideals on different curves");
        return s_ == o.s_ && q_ == o.q_ && p_ == o.p_;
    }
    bool operator!=(const FfIdeal& o) const { return !(*this == o); }

  private:
    Curve curve_;
    Poly s_, q_, p_;
};

/* Solution of u*a + v*b + w*c == g with g = gcd(a, b, c) monic. */
struct BezoutTriple {
    Poly g, u, v, w;
};

inline BezoutTriple bezout_triple(const Poly& a, const Poly& b, const Poly& c) {
    auto ab = xgcd(a, b);
    auto full = xgcd(ab.g, c);
    return {full.g, full.u * ab.u, full.u * ab.v, full.v};
}

/* Product by the composition formula. Contents multiply through:
 * S_a(Q_a,P_a) * S_b(Q_b,P_b) = S_a*S_b*g * (Q_a*Q_b/g^2, P_3)  where
 * g = gcd(Q_a, Q_b, P_a+P_b-h) = U*Q_a + V*Q_b + W*(P_a+P_b-h)  and
 * P_3 = P_b + (Q_b/g) * (V*(P_a-P_b) + W*(f + h*P_b - P_b^2)/Q_b). */
inline FfIdeal operator*(const FfIdeal& a, const FfIdeal& b) {
    if (a.curve() != b.curve()) throw CurveMismatch("ideals on different curves");
    const Curve& curve = a.curve();
    Poly t = a.P() + b.P() - curve.h();
    BezoutTriple bz = bezout_triple(a.Q(), b.Q(), t);
    Poly qa_red = a.Q() / bz.g;
    Poly qb_red = b.Q() / bz.g;
    Poly p3 = b.P() + qb_red * (bz.v * (a.P() - b.P()) + bz.w * b.norm_ratio());
    return FfIdeal(curve, a.S() * b.S() * bz.g, qa_red * qb_red, p3);
}

/* Bezout data and the step sequence behind a^m = (Q^m, P + v1*Q*R*step(m)).
 *
 * step(1) = 0 and step(n+1) = 1 + (1 + v1*h - 2*P*v1)*step(n)
 *                               - v1^2*Q*R*step(n)^2.
 * With reduction on, step(n) is stored mod Q^n; this loses nothing because
 * 1 + v1*h - 2*P*v1 == u1*Q, so a change of step(n) by a multiple of Q^n
 * moves step(n+1) by a multiple of Q^(n+1) only. */
class PowerTrace {
  public:
    const Poly& u1() const { return u1_; }
    const Poly& v1() const { return v1_; }
    /* R = (f + P*h - P^2) / Q */
    const Poly& ratio() const { return r_; }
    bool reduced() const { return reduced_; }

    std::size_t length() const { return steps_.size(); }

    /* 1-based: step(n) is the n-th element of the sequence. */
    const Poly& step(std::size_t n) const {
        if (n < 1 || n > steps_.size())
            throw ExponentOutOfRange("trace has no step " + std::to_string(n));
        return steps_[n - 1];
    }
    const std::vector<Poly>& steps() const { return steps_; }

  private:
    friend PowerTrace power_trace(const Curve&, const Poly&, const Poly&, unsigned, bool);

    PowerTrace(Poly u1, Poly v1, Poly r, std::vector<Poly> steps, bool reduced)
        : u1_(std::move(u1)), v1_(std::move(v1)), r_(std::move(r)),
          steps_(std::move(steps)), reduced_(reduced) {}

    Poly u1_, v1_, r_;
    std::vector<Poly> steps_;
    bool reduced_;
};

/* Runs the recursion for a primitive ideal (Q, P) with gcd(Q, 2P-h) = 1.
 * Throws NonCoprime when that gcd is not 1; the closed form does not apply
 * and the caller has to fall back to repeated multiplication. */
inline PowerTrace power_trace(const Curve& curve, const Poly& Q_in, const Poly& P_in,
                              unsigned m, bool reduce = true) {
    if (m < 1 || m > kMaxExponent)
        throw ExponentOutOfRange("exponent must be in [1, " +
                                 std::to_string(kMaxExponent) + "]");
    const std::uint32_t p = curve.p();
    /* validate and normalize through the constructor */
    FfIdeal a(curve, Poly::one(p), Q_in, P_in);
    const Poly& Q = a.Q();
    const Poly& P = a.P();

    Poly t = P + P - curve.h();
    PolyXgcd bz = xgcd(Q, t);
    if (!bz.g.is_one())
        throw NonCoprime("gcd(Q, 2P-h) = " + to_string(bz.g) + ", not 1");
    Poly ratio = a.norm_ratio();

    Poly lin = Poly::one(p) + bz.v * curve.h() - (P + P) * bz.v; /* == u1*Q */
    Poly quad = bz.v * bz.v * Q * ratio;

    std::vector<Poly> steps;
    steps.reserve(m);
    steps.emplace_back(p); /* step(1) = 0 */
    Poly qpow = Q;
    for (unsigned n = 1; n < m; ++n) {
        const Poly& s = steps.back();
        Poly next = Poly::one(p) + lin * s - quad * s * s;
        if (reduce) {
            qpow *= Q; /* Q^(n+1) */
            next = next % qpow;
        } else if (next.degree() > kMaxStepDegree) {
            throw SizeLimitExceeded("unreduced step degree exceeds " +
                                    std::to_string(kMaxStepDegree) +
                                    "; rerun with reduction");
        }
        steps.push_back(std::move(next));
    }
    return PowerTrace(std::move(bz.u), std::move(bz.v), std::move(ratio),
                      std::move(steps), reduce);
}

/* Product of ideals as rank-2 modules over F_p[x]: formula-free ground
 * truth for operator* and for the power recursion.
 *
 * Elements are pairs (u, v) standing for u + v*y with y^2 = f - h*y. The
 * four pairwise products of the generators are triangularized by unimodular
 * row operations on the y-column: d = gcd of the y-coefficients, realized
 * as one generator (w, d), then the gcd g of the left-over x-parts. The
 * module is then g*F_p[x] + (w + d*y)*F_p[x], i.e. S = d, Q = g/d,
 * P = w/d mod Q. */
inline FfIdeal hnf_mul(const FfIdeal& a, const FfIdeal& b) {
    if (a.curve() != b.curve()) throw CurveMismatch("ideals on different curves");
    const Curve& curve = a.curve();
    const Poly& f = curve.f();
    const Poly& h = curve.h();

    struct Gen {
        Poly u, v;
    };
    auto mul = [&](const Gen& x, const Gen& y) -> Gen {
        return {x.u * y.u + x.v * y.v * f, x.u * y.v + y.u * x.v - x.v * y.v * h};
    };

    const std::uint32_t p = curve.p();
    Gen a1{a.S() * a.Q(), Poly(p)}, a2{a.S() * a.P(), a.S()};
    Gen b1{b.S() * b.Q(), Poly(p)}, b2{b.S() * b.P(), b.S()};
    Gen gens[4] = {mul(a1, b1), mul(a1, b2), mul(a2, b1), mul(a2, b2)};

    Poly acc_u(p), acc_v(p);
    std::vector<Poly> xparts;
    for (Gen& gen : gens) {
        if (gen.v.is_zero()) {
            if (!gen.u.is_zero()) xparts.push_back(std::move(gen.u));
            continue;
        }
        if (acc_v.is_zero()) {
            acc_u = std::move(gen.u);
            acc_v = std::move(gen.v);
            continue;
        }
        PolyXgcd e = xgcd(acc_v, gen.v);
        Poly w_acc = acc_v / e.g;
        Poly w_gen = gen.v / e.g;
        Poly merged_u = e.u * acc_u + e.v * gen.u;
        /* determinant of [[e.u, e.v], [w_gen, -w_acc]] is a unit */
        Poly xpart = w_gen * acc_u - w_acc * gen.u;
        acc_u = std::move(merged_u);
        acc_v = e.g;
        if (!xpart.is_zero()) xparts.push_back(std::move(xpart));
    }
    if (acc_v.is_zero() || xparts.empty())
        throw InternalOracleError("degenerate generator matrix");
    if (!acc_v.is_monic()) {
        std::int64_t s = FpElement(acc_v.lc(), p).inv().value();
        acc_u = acc_u.scaled(s);
        acc_v = acc_v.scaled(s);
    }
    Poly g = xparts.front();
    for (std::size_t i = 1; i < xparts.size(); ++i) g = gcd(g, xparts[i]);

    auto [q_part, r1] = divrem(g, acc_v);
    if (!r1.is_zero()) throw InternalOracleError("content does not divide the x-part gcd");
    auto [p_part, r2] = divrem(acc_u, acc_v);
    if (!r2.is_zero()) throw InternalOracleError("content does not divide u*");
    return FfIdeal(curve, acc_v, q_part, p_part);
}

/* a^m by the requested method. All methods agree as normalized ideals; the
 * recursive one needs a primitive with gcd(Q, 2P-h) = 1 and is the only one
 * affected by `reduce`. */
inline FfIdeal pow(const FfIdeal& a, unsigned m, Method method = Method::recursive,
                   bool reduce = true) {
    if (m < 1 || m > kMaxExponent)
        throw ExponentOutOfRange("exponent must be in [1, " +
                                 std::to_string(kMaxExponent) + "]");
    switch (method) {
        case Method::recursive: {
            if (!a.primitive())
                throw NotPrimitive("closed-form powering needs S = 1");
            PowerTrace tr = power_trace(a.curve(), a.Q(), a.P(), m, reduce);
            Poly qm = pow(a.Q(), m);
            Poly pm = a.P() + tr.v1() * a.Q() * tr.ratio() * tr.step(m);
            return FfIdeal(a.curve(), Poly::one(a.curve().p()), qm, pm);
        }
        case Method::repeated: {
            FfIdeal acc = a;
            for (unsigned i = 1; i < m; ++i) acc = acc * a;
            return acc;
        }
        case Method::hnf: {
            FfIdeal acc = a;
            for (unsigned i = 1; i < m; ++i) acc = hnf_mul(acc, a);
            return acc;
        }
    }
    throw Error("unreachable");
}

/* Degree-1 prime above a random x0: Q = x - x0, P = y0 with y0 a root of
 * y^2 + h(x0)y - f(x0). Deterministic in the seed; gives up after p draws
 * (small fields can genuinely have no affine point). */
inline FfIdeal random_prime_ideal(const Curve& curve, std::uint64_t seed) {
    const std::uint32_t p = curve.p();
    std::mt19937_64 rng(detail::splitmix64(seed));
    for (std::uint32_t trial = 0; trial < p; ++trial) {
        std::uint32_t x0 = static_cast<std::uint32_t>(detail::draw(rng, p));
        std::uint32_t fx = curve.f().eval(x0);
        std::uint32_t hx = curve.h().eval(x0);
        std::vector<std::uint32_t> roots;
        for (std::uint32_t y0 = 0; y0 < p; ++y0) {
            std::uint64_t val = (static_cast<std::uint64_t>(y0) * y0 +
                                 static_cast<std::uint64_t>(hx) * y0 +
                                 (p - fx)) % p;
            if (val == 0) roots.push_back(y0);
        }
        if (roots.empty()) continue;
        std::uint32_t y0 = roots[detail::draw(rng, roots.size())];
        Poly q(p, {static_cast<std::int64_t>(p - x0), 1});
        return FfIdeal(curve, Poly::one(p), q, Poly::constant(p, y0));
    }
    throw NoPointFound("no affine point found in " + std::to_string(p) + " draws");
}

} // namespace iqpow

#endif /* IQPOW_FF_IDEAL_HPP */
