#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dtvtomo::rng {

// All sampling is done with explicit scalings of raw mt19937_64 output.
// <random> distributions are not bit-identical across standard libraries,
// but the engine itself is, so seeded outputs stay portable.

/// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi], inclusive.
inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(g() % span);
}

/// Standard normal via Box-Muller (two raws per sample).
inline double gaussian(std::mt19937_64& g) {
    const double u1 = 1.0 - uniform01(g); // (0, 1]
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace dtvtomo::rng
