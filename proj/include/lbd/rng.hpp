#pragma once

#include <cstdint>

namespace lbd {

// splitmix64 generator (64-bit state). The output sequence is fixed by the
// algorithm itself rather than by a standard library build, so anything
// derived from a seed is reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n > 0.
    std::uint64_t uniform_int(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

} // namespace lbd
