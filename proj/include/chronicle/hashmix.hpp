#pragma once

#include <cstdint>
#include <random>

namespace chronicle {

// SplitMix64 finalizer. All seed derivation and the synthetic model go
// through this so results are identical across platforms and compilers.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

// Unbiased draw in [0, bound). std::uniform_int_distribution is
// implementation-defined, so bounded draws are done by hand (Lemire's
// multiply-shift with rejection).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        if (static_cast<std::uint64_t>(m) >= threshold) {
            return static_cast<std::uint64_t>(m >> 64);
        }
    }
}

// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace chronicle
