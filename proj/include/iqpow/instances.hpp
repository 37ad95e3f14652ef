#ifndef IQPOW_INSTANCES_HPP
#define IQPOW_INSTANCES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "iqpow/common.hpp"
#include "iqpow/curve.hpp"
#include "iqpow/ff_ideal.hpp"
#include "iqpow/nf_ideal.hpp"

/* Seeded instance generators shared by the verification CLI, the benchmark
 * and the test suites. Everything here is deterministic in (seed, index). */

namespace iqpow {

inline constexpr std::uint32_t kCasePrimes[] = {2, 3, 5, 7, 13};
inline constexpr unsigned kCaseGenera[] = {1, 2, 3};

struct FfInstance {
    Curve curve;
    FfIdeal ideal;
};

/* Random curve over F_p of genus g plus a primitive ideal with
 * gcd(Q, 2P-h) = 1 built as a product of random degree-1 primes. */
inline FfInstance make_ff_instance(std::mt19937_64& rng, std::uint32_t p, unsigned g) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Poly f = Poly::monomial(p, 1, 2 * g + 1);
        for (std::size_t d = 0; d < 2 * g + 1; ++d)
            f += Poly::monomial(p, static_cast<std::int64_t>(detail::draw(rng, p)), d);
        Poly h(p);
        if (p == 2) {
            std::size_t dh = detail::draw(rng, g + 1);
            h = Poly::monomial(p, 1, dh);
            for (std::size_t d = 0; d < dh; ++d)
                h += Poly::monomial(p, static_cast<std::int64_t>(detail::draw(rng, p)), d);
        }
        Curve curve(p, f, h);

        std::optional<FfIdeal> acc;
        try {
            unsigned k = 1 + static_cast<unsigned>(detail::draw(rng, g));
            acc = random_prime_ideal(curve, rng());
            for (unsigned i = 1; i < k; ++i)
                acc = *acc * random_prime_ideal(curve, rng());
        } catch (const NoPointFound&) {
            continue; /* curve with no usable point; draw another */
        }
        if (!acc->primitive()) continue;
        Poly t = acc->P() + acc->P() - curve.h();
        if (!gcd(acc->Q(), t).is_one()) continue;
        return {curve, *acc};
    }
    throw Error("no usable instance after 1000 attempts");
}

struct FfCase {
    Curve curve;
    FfIdeal ideal;
    unsigned m;
};

/* Case index walks the (p, genus) grid so a batch of consecutive indices
 * covers every combination. */
inline FfCase make_ff_case(std::uint64_t seed, std::uint64_t index, unsigned mmax) {
    std::mt19937_64 rng(detail::mix_seed(seed, index));
    std::uint32_t p = kCasePrimes[index % 5];
    unsigned g = kCaseGenera[(index / 5) % 3];
    FfInstance inst = make_ff_instance(rng, p, g);
    unsigned m = 1 + static_cast<unsigned>(detail::draw(rng, mmax));
    return {inst.curve, inst.ideal, m};
}

/* Small fixed discriminants plus `n_random` extra ones drawn down to -10^6,
 * adjusted to be 0 or 1 mod 4. */
inline std::vector<Int> nf_delta_palette(std::uint64_t seed, std::size_t n_random = 20) {
    std::vector<Int> deltas = {-4, -7, -8, -15, -20, -23, -47, -71};
    std::mt19937_64 rng(detail::mix_seed(seed, 0xde17a));
    for (std::size_t i = 0; i < n_random; ++i) {
        Int d = -static_cast<long>(3 + detail::draw(rng, 999996));
        Int m4 = mod_nonneg(d, 4);
        if (m4 == 2 || m4 == 3) d -= 2;
        deltas.push_back(d);
    }
    return deltas;
}

struct NfCase {
    NfIdeal ideal;
    unsigned m;
};

inline NfCase make_nf_case(const std::vector<Int>& deltas, std::uint64_t seed,
                           std::uint64_t index, unsigned mmax) {
    std::mt19937_64 rng(detail::mix_seed(seed, index ^ 0x8000000000000000ULL));
    const Int& delta = deltas[index % deltas.size()];
    NfIdeal ideal = nf_random_ideal(delta, rng(), true);
    unsigned m = 1 + static_cast<unsigned>(detail::draw(rng, mmax));
    return {ideal, m};
}

} // namespace iqpow

#endif /* IQPOW_INSTANCES_HPP */
