#ifndef IQPOW_FP_HPP
#define IQPOW_FP_HPP

#include <cstdint>
#include <string>

#include "iqpow/common.hpp"

namespace iqpow {

/* Moduli are capped so that a product of two residues always fits in a
 * 64-bit intermediate with room to spare. */
inline constexpr std::uint32_t kMaxModulus = 1u << 20;

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t checked_modulus(std::uint32_t p) {
    if (p >= kMaxModulus)
        throw BoundExceeded("modulus " + std::to_string(p) + " exceeds 2^20");
    if (!is_prime(p))
        throw NotPrime("modulus " + std::to_string(p) + " is not prime");
    return p;
}

/* One residue of F_p. The modulus travels with the value so mixed-field
 * arithmetic is caught at run time. */
class FpElement {
  public:
    FpElement(std::int64_t value, std::uint32_t p)
        : p_(checked_modulus(p)), v_(reduce(value, p_)) {}

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    bool operator==(const FpElement& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const FpElement& o) const { return !(*this == o); }

    FpElement operator+(const FpElement& o) const {
        check_same(o);
        return from_raw((v_ + static_cast<std::uint64_t>(o.v_)) % p_, p_);
    }
    FpElement operator-(const FpElement& o) const {
        check_same(o);
        return from_raw((v_ + static_cast<std::uint64_t>(p_) - o.v_) % p_, p_);
    }
    FpElement operator*(const FpElement& o) const {
        check_same(o);
        return from_raw(static_cast<std::uint64_t>(v_) * o.v_ % p_, p_);
    }
    FpElement operator-() const { return from_raw(v_ == 0 ? 0 : p_ - v_, p_); }

    /* Multiplicative inverse by the extended Euclidean algorithm. */
    FpElement inv() const {
        if (v_ == 0) throw NonInvertible("0 has no inverse mod " + std::to_string(p_));
        std::int64_t old_r = p_, r = v_;
        std::int64_t old_t = 0, t = 1;
        while (r != 0) {
            std::int64_t q = old_r / r;
            std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_t - q * t; old_t = t; t = tmp;
        }
        if (old_t < 0) old_t += p_;
        return from_raw(static_cast<std::uint64_t>(old_t), p_);
    }

  private:
    static std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    static FpElement from_raw(std::uint64_t v, std::uint32_t p) {
        FpElement e;
        e.p_ = p;
        e.v_ = static_cast<std::uint32_t>(v);
        return e;
    }
    void check_same(const FpElement& o) const {
        if (p_ != o.p_)
            throw ModulusMismatch("mixed moduli " + std::to_string(p_) + " and " +
                                  std::to_string(o.p_));
    }

    FpElement() : p_(2), v_(0) {}

    std::uint32_t p_;
    std::uint32_t v_;
};

} // namespace iqpow

#endif /* IQPOW_FP_HPP */
