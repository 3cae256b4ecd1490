// rng.hpp - tiny deterministic generator (splitmix64). Used instead of
// <random> distributions so seeded runs replay bit-identically on any
// standard library.
#pragma once

#include <cstdint>

namespace uam {

struct Rng {
    std::uint64_t s;

    explicit Rng(std::uint64_t seed = 1) : s(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace uam
