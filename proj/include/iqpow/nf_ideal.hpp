#ifndef IQPOW_NF_IDEAL_HPP
#define IQPOW_NF_IDEAL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "iqpow/common.hpp"

namespace iqpow {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline std::size_t bit_length(const Int& x) {
    if (x == 0) return 0;
    return boost::multiprecision::msb(abs_int(x)) + 1;
}

/* Least nonnegative residue; m > 0. */
inline Int mod_nonneg(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

struct IntXgcd {
    Int g, u, v; /* u*a + v*b == g >= 0 */
};

inline IntXgcd xgcd(const Int& a, const Int& b) {
    Int old_r = a, r = b;
    Int old_u = 1, u = 0;
    Int old_v = 0, v = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = std::move(r); r = std::move(tmp);
        tmp = old_u - q * u; old_u = std::move(u); u = std::move(tmp);
        tmp = old_v - q * v; old_v = std::move(v); v = std::move(tmp);
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    return {std::move(old_r), std::move(old_u), std::move(old_v)};
}

/* Unreduced steps double in bit length at every iteration; refuse to grow
 * past this rather than exhaust memory. */
inline constexpr std::size_t kMaxStepBits = std::size_t(1) << 24;

/* Integral ideal of the order of discriminant delta < 0, stored as the
 * module  Z*S*Q + Z*S*(P + sqrt(delta))/2  with 4Q | P^2 - delta.
 *
 * Canonical form: S, Q >= 1 and -Q < P <= Q (P is only defined mod 2Q:
 * shifting P by 2Q leaves the module unchanged). */
class NfIdeal {
  public:
    NfIdeal(Int delta, Int S, Int Q, Int P)
        : delta_(std::move(delta)), s_(std::move(S)), q_(std::move(Q)), p_(std::move(P)) {
        if (delta_ >= 0) throw InvalidDiscriminant("discriminant must be negative");
        Int m4 = mod_nonneg(delta_, 4);
        if (m4 != 0 && m4 != 1)
            throw InvalidDiscriminant("discriminant must be 0 or 1 mod 4");
        if (s_ < 1) throw IdealInvariantViolated("S must be positive");
        if (q_ < 1) throw IdealInvariantViolated("Q must be positive");
        p_ = mod_nonneg(p_, 2 * q_);
        if (p_ > q_) p_ -= 2 * q_;
        if ((p_ * p_ - delta_) % (4 * q_) != 0)
            throw IdealInvariantViolated("4Q does not divide P^2 - delta");
    }

    static NfIdeal unit(const Int& delta) {
        return NfIdeal(delta, 1, 1, mod_nonneg(delta, 2));
    }

    const Int& delta() const { return delta_; }
    const Int& S() const { return s_; }
    const Int& Q() const { return q_; }
    const Int& P() const { return p_; }

    bool primitive() const { return s_ == 1; }

    /* c = (P^2 - delta) / (4Q), exact by the constructor invariant. */
    Int norm_ratio() const { return (p_ * p_ - delta_) / (4 * q_); }

    bool operator==(const NfIdeal& o) const {
        if (delta_ != o.delta_) throw DiscriminantMismatch("ideals in different fields");
        return s_ == o.s_ && q_ == o.q_ && p_ == o.p_;
    }
    bool operator!=(const NfIdeal& o) const { return !(*this == o); }

  private:
    Int delta_, s_, q_, p_;
};

/* Bezout data and step sequence behind a^m = (Q^m, P - 2*Q*step(m)):
 * u1*Q + v1*P = 1, c = (P^2 - delta)/(4Q), step(1) = 0 and
 * step(n+1) = c*v1 + Q*u1*step(n) + Q*v1*step(n)^2.
 * With reduction on, step(n) is stored mod Q^n (least nonnegative). */
class NfPowerTrace {
  public:
    const Int& u1() const { return u1_; }
    const Int& v1() const { return v1_; }
    const Int& ratio() const { return c_; }
    bool reduced() const { return reduced_; }

    std::size_t length() const { return steps_.size(); }

    const Int& step(std::size_t n) const {
        if (n < 1 || n > steps_.size())
            throw ExponentOutOfRange("trace has no step " + std::to_string(n));
        return steps_[n - 1];
    }
    const std::vector<Int>& steps() const { return steps_; }

  private:
    friend NfPowerTrace nf_power_trace(const NfIdeal&, unsigned, bool);

    NfPowerTrace(Int u1, Int v1, Int c, std::vector<Int> steps, bool reduced)
        : u1_(std::move(u1)), v1_(std::move(v1)), c_(std::move(c)),
          steps_(std::move(steps)), reduced_(reduced) {}

    Int u1_, v1_, c_;
    std::vector<Int> steps_;
    bool reduced_;
};

inline NfPowerTrace nf_power_trace(const NfIdeal& a, unsigned m, bool reduce = true) {
    if (m < 1 || m > kMaxExponent)
        throw ExponentOutOfRange("exponent must be in [1, " +
                                 std::to_string(kMaxExponent) + "]");
    if (!a.primitive()) throw NotPrimitive("closed-form powering needs S = 1");
    IntXgcd bz = xgcd(a.Q(), a.P());
    if (bz.g != 1)
        throw NonCoprime("gcd(Q, P) = " + bz.g.str() + ", not 1");
    Int c = a.norm_ratio();

    std::vector<Int> steps;
    steps.reserve(m);
    steps.emplace_back(0);
    Int qpow = a.Q();
    for (unsigned n = 1; n < m; ++n) {
        const Int& s = steps.back();
        Int next = c * bz.v + a.Q() * bz.u * s + a.Q() * bz.v * s * s;
        if (reduce) {
            qpow *= a.Q(); /* Q^(n+1) */
            next = mod_nonneg(next, qpow);
        } else if (bit_length(next) > kMaxStepBits) {
            throw SizeLimitExceeded("unreduced step exceeds " +
                                    std::to_string(kMaxStepBits) +
                                    " bits; rerun with reduction");
        }
        steps.push_back(std::move(next));
    }
    return NfPowerTrace(std::move(bz.u), std::move(bz.v), std::move(c),
                        std::move(steps), reduce);
}

/* Product of ideals as rank-2 modules over Z: formula-free ground truth.
 *
 * Elements are pairs (u, v) standing for (u + v*sqrt(delta))/2 with
 * u = v*delta (mod 2); the product rule is
 * (u1,v1)*(u2,v2) = ((u1*u2 + v1*v2*delta)/2, (u1*v2 + u2*v1)/2), both
 * divisions exact by the parity constraint. The four pairwise products of
 * the generators {(2SQ, 0), (SP, S)} are triangularized exactly as in the
 * function-field oracle; the resulting module Z*(g/2) + Z*(w + d*sqrt)/2
 * is the ideal with S = d, Q = g/(2d), P = w/d. */
inline NfIdeal nf_hnf_mul(const NfIdeal& a, const NfIdeal& b) {
    if (a.delta() != b.delta()) throw DiscriminantMismatch("ideals in different fields");
    const Int& delta = a.delta();

    struct Gen {
        Int u, v;
    };
    auto mul = [&](const Gen& x, const Gen& y) -> Gen {
        Int nu = x.u * y.u + x.v * y.v * delta;
        Int nv = x.u * y.v + y.u * x.v;
        if (nu % 2 != 0 || nv % 2 != 0)
            throw InternalOracleError("parity constraint violated in element product");
        return {nu / 2, nv / 2};
    };

    Gen a1{2 * a.S() * a.Q(), 0}, a2{a.S() * a.P(), a.S()};
    Gen b1{2 * b.S() * b.Q(), 0}, b2{b.S() * b.P(), b.S()};
    Gen gens[4] = {mul(a1, b1), mul(a1, b2), mul(a2, b1), mul(a2, b2)};

    Int acc_u = 0, acc_v = 0;
    std::vector<Int> xparts;
    for (Gen& gen : gens) {
        if (gen.v == 0) {
            if (gen.u != 0) xparts.push_back(std::move(gen.u));
            continue;
        }
        if (acc_v == 0) {
            acc_u = std::move(gen.u);
            acc_v = std::move(gen.v);
            continue;
        }
        IntXgcd e = xgcd(acc_v, gen.v);
        Int w_acc = acc_v / e.g;
        Int w_gen = gen.v / e.g;
        Int merged_u = e.u * acc_u + e.v * gen.u;
        Int xpart = w_gen * acc_u - w_acc * gen.u;
        acc_u = std::move(merged_u);
        acc_v = e.g;
        if (xpart != 0) xparts.push_back(std::move(xpart));
    }
    if (acc_v == 0 || xparts.empty())
        throw InternalOracleError("degenerate generator matrix");
    if (acc_v < 0) { acc_u = -acc_u; acc_v = -acc_v; }
    Int g = abs_int(xparts.front());
    for (std::size_t i = 1; i < xparts.size(); ++i)
        g = boost::multiprecision::gcd(g, xparts[i]);

    if (g % (2 * acc_v) != 0)
        throw InternalOracleError("content does not divide the rational gcd");
    if (acc_u % acc_v != 0)
        throw InternalOracleError("content does not divide u*");
    return NfIdeal(delta, acc_v, g / (2 * acc_v), acc_u / acc_v);
}

/* a^m. Method::recursive uses the step recursion (primitive, gcd(Q,P)=1
 * inputs only); Method::hnf and Method::repeated both fold the module
 * oracle, which is the only general multiplication in the number-field
 * case. */
inline NfIdeal pow(const NfIdeal& a, unsigned m, Method method = Method::recursive,
                   bool reduce = true) {
    if (m < 1 || m > kMaxExponent)
        throw ExponentOutOfRange("exponent must be in [1, " +
                                 std::to_string(kMaxExponent) + "]");
    switch (method) {
        case Method::recursive: {
            NfPowerTrace tr = nf_power_trace(a, m, reduce);
            Int qm = boost::multiprecision::pow(a.Q(), m);
            Int pm = a.P() - 2 * a.Q() * tr.step(m);
            return NfIdeal(a.delta(), 1, std::move(qm), std::move(pm));
        }
        case Method::repeated:
        case Method::hnf: {
            NfIdeal acc = a;
            for (unsigned i = 1; i < m; ++i) acc = nf_hnf_mul(acc, a);
            return acc;
        }
    }
    throw Error("unreachable");
}

/* Primitive random ideal: draws Q in [1, 10^4] and scans P in (-Q, Q] for
 * 4Q | P^2 - delta, retrying Q when no P fits. Deterministic in the seed. */
inline NfIdeal nf_random_ideal(const Int& delta, std::uint64_t seed,
                               bool require_coprime = true) {
    NfIdeal::unit(delta); /* validates delta */
    std::mt19937_64 rng(detail::splitmix64(seed));
    const Int parity = mod_nonneg(delta, 2);
    for (int trial = 0; trial < 200; ++trial) {
        Int q = static_cast<long>(1 + detail::draw(rng, 10000));
        std::vector<Int> candidates;
        Int four_q = 4 * q;
        /* P^2 = delta (mod 4) forces P = delta (mod 2) */
        Int start = -q + 1;
        if (mod_nonneg(start, 2) != parity) start += 1;
        for (Int pc = start; pc <= q; pc += 2) {
            if ((pc * pc - delta) % four_q != 0) continue;
            if (require_coprime && boost::multiprecision::gcd(q, pc) != 1) continue;
            candidates.push_back(pc);
        }
        if (candidates.empty()) continue;
        Int pick = candidates[detail::draw(rng, candidates.size())];
        return NfIdeal(delta, 1, std::move(q), std::move(pick));
    }
    throw NoIdealFound("no ideal found for delta " + delta.str() + " in 200 draws");
}

} // namespace iqpow

#endif /* IQPOW_NF_IDEAL_HPP */
