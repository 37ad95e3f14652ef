#ifndef IQPOW_CURVE_HPP
#define IQPOW_CURVE_HPP

#include <cstdint>
#include <utility>

#include "iqpow/common.hpp"
#include "iqpow/poly.hpp"

namespace iqpow {

/* Imaginary hyperelliptic curve y^2 + h(x)y = f(x) over F_p.
 *
 * Accepted shapes: f monic of odd degree 2g+1 with g >= 1; h = 0 when p is
 * odd, h monic with deg h <= g when p = 2. Nonsingularity is NOT checked:
 * none of the ideal arithmetic below needs it, and callers who care must
 * screen their curves themselves. */
class Curve {
  public:
    Curve(std::uint32_t p, Poly f, Poly h)
        : p_(checked_modulus(p)), f_(std::move(f)), h_(std::move(h)) {
        if (f_.modulus() != p_) throw InvalidCurve("f is not over F_p");
        if (h_.modulus() != p_) throw InvalidCurve("h is not over F_p");
        if (!f_.is_monic()) throw InvalidCurve("f must be monic");
        if (f_.degree() < 3) throw InvalidCurve("deg f must be at least 3 (genus >= 1)");
        if (f_.degree() % 2 == 0) throw InvalidCurve("deg f must be odd");
        g_ = static_cast<unsigned>((f_.degree() - 1) / 2);
        if (p_ == 2) {
            if (!h_.is_monic()) throw InvalidCurve("h must be monic in characteristic 2");
            if (h_.degree() > static_cast<int>(g_))
                throw InvalidCurve("deg h must be at most the genus");
        } else if (!h_.is_zero()) {
            throw InvalidCurve("h must be zero in odd characteristic");
        }
    }

    std::uint32_t p() const { return p_; }
    const Poly& f() const { return f_; }
    const Poly& h() const { return h_; }
    unsigned genus() const { return g_; }

    bool operator==(const Curve& o) const {
        return p_ == o.p_ && f_ == o.f_ && h_ == o.h_;
    }
    bool operator!=(const Curve& o) const { return !(*this == o); }

  private:
    std::uint32_t p_;
    Poly f_, h_;
    unsigned g_;
};

} // namespace iqpow

#endif /* IQPOW_CURVE_HPP */
