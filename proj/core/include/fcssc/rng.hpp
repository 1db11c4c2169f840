#ifndef FCSSC_RNG_HPP
#define FCSSC_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace fcssc {

/// All randomness in the library flows through mt19937_64, whose output
/// sequence is fixed by the standard. The std:: distributions are not, so the
/// draws below are hand-rolled to keep seeded runs identical across
/// platforms and compilers.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace fcssc

#endif
