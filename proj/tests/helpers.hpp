#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace testutil {

// Deterministic uniform draws; the raw-bits-to-double mapping avoids any
// implementation variance in std::uniform_real_distribution.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int index(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
};

inline double rel_or_abs_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace testutil
