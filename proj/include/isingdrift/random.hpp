#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace isingdrift {

// All sampling goes through mt19937_64 with explicit transforms so that a given seed
// produces the same stream on every platform (std:: distributions are not portable).
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) { return Rng(seed + stream); }

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Unbiased uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& g, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do v = g();
    while (v >= limit);
    return v % n;
}

inline double exponential(Rng& g, double rate) { return -std::log1p(-uniform01(g)) / rate; }

// Number of failures before the first success, success probability 1/(1+m):
// P(l) = m^l (1+m)^(-l-1).  Inverse CDF.
inline long geometric_failures(Rng& g, double m) {
    if (m <= 0.0) return 0;
    const double u = uniform01(g);
    return static_cast<long>(std::floor(std::log1p(-u) / std::log(m / (1.0 + m))));
}

}  // namespace isingdrift
