#pragma once

#include <cstdint>

namespace qumeas {

// splitmix64: tiny splittable generator. Trajectory k of a sampling run uses
// an independent stream keyed by (seed, k), so results do not depend on
// execution order.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        g.state = g.next();
        return g;
    }
};

}  // namespace qumeas
