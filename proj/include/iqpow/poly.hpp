#ifndef IQPOW_POLY_HPP
#define IQPOW_POLY_HPP

#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iqpow/common.hpp"
#include "iqpow/fp.hpp"

namespace iqpow {

/* Degree of the zero polynomial. */
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min();

/* Largest exponent the text parser accepts. */
inline constexpr std::uint64_t kMaxParseExponent = 1u << 20;

/* Dense univariate polynomial over F_p, coefficients lowest degree first,
 * never with a trailing zero (the zero polynomial has no coefficients).
 * Residues are kept raw; the modulus is validated once per object. */
class Poly {
  public:
    explicit Poly(std::uint32_t p) : p_(checked_modulus(p)) {}

    Poly(std::uint32_t p, std::initializer_list<std::int64_t> low_first)
        : p_(checked_modulus(p)) {
        c_.reserve(low_first.size());
        for (std::int64_t v : low_first) c_.push_back(reduce(v));
        trim();
    }

    static Poly constant(std::uint32_t p, std::int64_t c) { return Poly(p, {c}); }
    static Poly one(std::uint32_t p) { return constant(p, 1); }
    static Poly x(std::uint32_t p) { return Poly(p, {0, 1}); }

    static Poly monomial(std::uint32_t p, std::int64_t c, std::size_t deg) {
        Poly r(p);
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = r.reduce(c);
        r.trim();
        return r;
    }

    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    int degree() const { return c_.empty() ? kNegInfDeg : static_cast<int>(c_.size()) - 1; }

    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t lc() const { return c_.empty() ? 0 : c_.back(); }

    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        check_same(o);
        Poly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (coeff(i) + static_cast<std::uint64_t>(o.coeff(i))) % p_;
        r.trim();
        return r;
    }

    Poly operator-(const Poly& o) const {
        check_same(o);
        Poly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (coeff(i) + static_cast<std::uint64_t>(p_) - o.coeff(i)) % p_;
        r.trim();
        return r;
    }

    Poly operator-() const {
        Poly r(p_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : p_ - c_[i];
        return r;
    }

    Poly operator*(const Poly& o) const {
        check_same(o);
        Poly r(p_);
        if (is_zero() || o.is_zero()) return r;
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = (r.c_[i + j] +
                               static_cast<std::uint64_t>(c_[i]) * o.c_[j]) % p_;
        }
        r.trim();
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /* Scalar multiple; s is reduced mod p. */
    Poly scaled(std::int64_t s) const {
        Poly r(p_);
        std::uint32_t sr = reduce(s);
        if (sr == 0) return r;
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = static_cast<std::uint64_t>(c_[i]) * sr % p_;
        r.trim();
        return r;
    }

    /* Same polynomial scaled to leading coefficient 1 (zero stays zero). */
    Poly monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(FpElement(lc(), p_).inv().value());
    }

    std::uint32_t eval(std::int64_t x0) const {
        std::uint64_t x = reduce(x0), acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
        return static_cast<std::uint32_t>(acc);
    }

  private:
    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }
    void check_same(const Poly& o) const {
        if (p_ != o.p_)
            throw ModulusMismatch("mixed moduli " + std::to_string(p_) + " and " +
                                  std::to_string(o.p_));
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

/* Long division: a = q*b + r with deg r < deg b. */
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (a.modulus() != b.modulus())
        throw ModulusMismatch("mixed moduli in division");
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q(a.modulus()), r = a;
    if (a.degree() < b.degree()) return {q, r};
    const std::uint32_t p = a.modulus();
    const std::uint32_t invlead = FpElement(b.lc(), p).inv().value();
    const std::size_t db = b.c_.size() - 1;
    q.c_.assign(r.c_.size() - db, 0);
    /* i runs from deg r down to deg b */
    for (std::size_t i = r.c_.size(); i-- > db;) {
        std::uint32_t top = r.c_[i];
        if (top == 0) continue;
        std::uint32_t factor =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(top) * invlead % p);
        q.c_[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j) {
            std::uint64_t sub = static_cast<std::uint64_t>(factor) * b.c_[j] % p;
            r.c_[i - db + j] =
                static_cast<std::uint32_t>((r.c_[i - db + j] + p - sub) % p);
        }
    }
    q.trim();
    r.trim();
    return {q, r};
}

inline Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

struct PolyXgcd {
    Poly g, u, v; /* u*a + v*b == g, g monic */
};

/* Extended gcd, cofactors in reduced form. The raw gcd and both cofactors
 * are scaled by lc(gcd)^-1 so g comes out monic. */
inline PolyXgcd xgcd(const Poly& a, const Poly& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch("mixed moduli in xgcd");
    if (a.is_zero() && b.is_zero()) throw BothZero("xgcd(0, 0) is undefined");
    const std::uint32_t p = a.modulus();
    Poly old_r = a, r = b;
    Poly old_u = Poly::one(p), u(p);
    Poly old_v(p), v = Poly::one(p);
    while (!r.is_zero()) {
        auto [q, rem] = divrem(old_r, r);
        old_r = std::exchange(r, rem);
        Poly nu = old_u - q * u;
        old_u = std::exchange(u, nu);
        Poly nv = old_v - q * v;
        old_v = std::exchange(v, nv);
    }
    std::int64_t s = FpElement(old_r.lc(), p).inv().value();
    return {old_r.scaled(s), old_u.scaled(s), old_v.scaled(s)};
}

/* Plain gcd, monic. gcd(0, 0) == 0. */
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::exchange(b, r);
    }
    return a.monic();
}

inline Poly pow(const Poly& base, unsigned long long e) {
    Poly acc = Poly::one(base.modulus());
    Poly sq = base;
    while (e > 0) {
        if (e & 1) acc *= sq;
        e >>= 1;
        if (e) sq *= sq;
    }
    return acc;
}

/* Text format, both directions:
 *
 *   poly  := term (("+"|"-") term)*
 *   term  := coeff | [coeff "*"?] "x" ["^" nat]
 *   coeff := nat
 *
 * ASCII whitespace is allowed between tokens, coefficients are reduced
 * mod p, repeated terms are summed.
 */
inline Poly parse_poly(std::string_view s, std::uint32_t p) {
    checked_modulus(p);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto at_digit = [&] {
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    };
    auto parse_coeff = [&]() -> std::uint32_t {
        std::uint64_t acc = 0;
        while (at_digit()) {
            acc = (acc * 10 + static_cast<std::uint64_t>(s[i] - '0')) % p;
            ++i;
        }
        return static_cast<std::uint32_t>(acc);
    };
    auto parse_exp = [&]() -> std::uint64_t {
        std::uint64_t acc = 0;
        while (at_digit()) {
            acc = acc * 10 + static_cast<std::uint64_t>(s[i] - '0');
            if (acc > kMaxParseExponent) throw ParseError(i, "exponent too large");
            ++i;
        }
        return acc;
    };

    std::vector<std::uint32_t> acc;
    auto add_term = [&](std::uint32_t c, std::size_t deg, bool negate) {
        if (negate && c != 0) c = p - c;
        if (acc.size() <= deg) acc.resize(deg + 1, 0);
        acc[deg] = static_cast<std::uint32_t>((acc[deg] + static_cast<std::uint64_t>(c)) % p);
    };

    auto parse_term = [&](bool negate) {
        skip_ws();
        std::uint32_t c = 1;
        if (at_digit()) {
            c = parse_coeff();
            skip_ws();
            bool star = i < s.size() && s[i] == '*';
            if (star) {
                ++i;
                skip_ws();
            }
            if (i >= s.size() || s[i] != 'x') {
                if (star) throw ParseError(i, "expected 'x' after '*'");
                add_term(c, 0, negate);
                return;
            }
        } else if (i >= s.size() || s[i] != 'x') {
            throw ParseError(i, "expected term");
        }
        ++i; /* consume 'x' */
        std::size_t deg = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip_ws();
            if (!at_digit()) throw ParseError(i, "expected exponent after '^'");
            deg = static_cast<std::size_t>(parse_exp());
        }
        add_term(c, deg, negate);
    };

    parse_term(false);
    skip_ws();
    while (i < s.size()) {
        char op = s[i];
        if (op != '+' && op != '-') throw ParseError(i, "expected '+' or '-'");
        ++i;
        parse_term(op == '-');
        skip_ws();
    }

    Poly r(p);
    for (std::size_t d = acc.size(); d-- > 0;)
        if (acc[d] != 0) r += Poly::monomial(p, acc[d], d);
    return r;
}

/* Inverse of parse_poly: descending degree, zero coefficients omitted,
 * unit coefficients of x-terms omitted, zero prints as "0". */
inline std::string to_string(const Poly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int d = a.degree(); d >= 0; --d) {
        std::uint32_t c = a.coeff(static_cast<std::size_t>(d));
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) {
                out += std::to_string(c);
                out += '*';
            }
            out += 'x';
            if (d != 1) {
                out += '^';
                out += std::to_string(d);
            }
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& a) {
    return os << to_string(a);
}

} // namespace iqpow

#endif /* IQPOW_POLY_HPP */
