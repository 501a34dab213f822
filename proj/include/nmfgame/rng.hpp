#pragma once

#include <cstdint>

#include "nmfgame/errors.hpp"

namespace nmfgame {

// SplitMix64 stream. The constants are Sebastiano Vigna's published ones and
// are fixed for the lifetime of this repo: every experiment seed in every
// output file depends on them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        if (!(lo < hi)) throw ArgumentError("uniform bounds require lo < hi");
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

// Stateless mix of up to four integers into one seed, used by the harness to
// derive independent per-(dataset, algo, init) streams from one master seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(0x41424344U, a);
    h = mix(h, b);
    h = mix(h, c);
    h = mix(h, d);
    return h;
}

}  // namespace nmfgame
