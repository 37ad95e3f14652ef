#ifndef IQPOW_COMMON_HPP
#define IQPOW_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace iqpow {

/* Everything thrown by this library derives from Error. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* field */
struct NotPrime : Error { using Error::Error; };
struct BoundExceeded : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };
struct NonInvertible : Error { using Error::Error; };

/* polynomial ring */
struct DivisionByZero : Error { using Error::Error; };
struct BothZero : Error { using Error::Error; };

struct ParseError : Error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : Error("parse error at byte " + std::to_string(off) + ": " + msg), offset(off) {}
};

/* curve */
struct InvalidCurve : Error { using Error::Error; };

/* ideals */
struct ZeroQ : Error { using Error::Error; };
struct IdealInvariantViolated : Error { using Error::Error; };
struct CurveMismatch : Error { using Error::Error; };
struct NonCoprime : Error { using Error::Error; };
struct NotPrimitive : Error { using Error::Error; };
struct ExponentOutOfRange : Error { using Error::Error; };
struct InternalOracleError : Error { using Error::Error; };
struct NoPointFound : Error { using Error::Error; };
struct SizeLimitExceeded : Error { using Error::Error; };
struct InvalidDiscriminant : Error { using Error::Error; };
struct DiscriminantMismatch : Error { using Error::Error; };
struct NoIdealFound : Error { using Error::Error; };

/* How a power gets computed: the one-pass recursion, folding the
 * composition formula, or folding the module-triangularization oracle. */
enum class Method { recursive, repeated, hnf };

/* Largest accepted power exponent. */
inline constexpr unsigned kMaxExponent = 1000;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/* Decorrelates a master seed into per-stream seeds (one per test case). */
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/* Bounded draw by plain modulo. The slight bias is irrelevant here and the
 * result is reproducible across standard library implementations, which
 * std::uniform_int_distribution is not. */
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

} // namespace detail

} // namespace iqpow

#endif /* IQPOW_COMMON_HPP */
