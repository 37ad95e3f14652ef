/* Walks through one power computation in each setting, printing the trace
 * next to the results of the independent routes. */

#include <iostream>

#include "iqpow/iqpow.hpp"

using namespace iqpow;

int main() {
    /* y^2 = x^3 + 1 over F_5, a = (x, 1), a^5 */
    Curve curve(5, parse_poly("x^3+1", 5), Poly(5));
    FfIdeal a(curve, Poly::one(5), parse_poly("x", 5), Poly::one(5));

    PowerTrace tr = power_trace(curve, a.Q(), a.P(), 5);
    std::cout << "function field: y^2 = " << curve.f() << " over F_" << curve.p()
              << ", a = (" << a.Q() << ", " << a.P() << ")\n";
    std::cout << "  u1 = " << tr.u1() << ", v1 = " << tr.v1()
              << ", R = " << tr.ratio() << "\n";
    for (std::size_t n = 1; n <= tr.length(); ++n)
        std::cout << "  step " << n << ": " << tr.step(n) << "\n";

    FfIdeal r = pow(a, 5, Method::recursive);
    FfIdeal check = pow(a, 5, Method::hnf);
    std::cout << "  a^5 = (" << r.S() << ", " << r.Q() << ", " << r.P() << ")"
              << (r == check ? "  [matches the module oracle]" : "  [MISMATCH]")
              << "\n\n";

    /* delta = -23, a = (2, 1), a^4 */
    NfIdeal b(-23, 1, 2, 1);
    NfPowerTrace ntr = nf_power_trace(b, 4);
    std::cout << "number field: delta = " << b.delta() << ", a = (" << b.Q() << ", "
              << b.P() << ")\n";
    std::cout << "  u1 = " << ntr.u1() << ", v1 = " << ntr.v1()
              << ", c = " << ntr.ratio() << "\n";
    for (std::size_t n = 1; n <= ntr.length(); ++n)
        std::cout << "  step " << n << ": " << ntr.step(n) << "\n";

    NfIdeal rb = pow(b, 4, Method::recursive);
    NfIdeal checkb = pow(b, 4, Method::hnf);
    std::cout << "  a^4 = (" << rb.S() << ", " << rb.Q() << ", " << rb.P() << ")"
              << (rb == checkb ? "  [matches the module oracle]" : "  [MISMATCH]")
              << "\n";
    return 0;
}
