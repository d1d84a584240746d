#pragma once

#include <cstdint>

namespace qtpm::rng {

// Counter-based generator: value i of a stream is addressable without
// stepping through 0..i-1, so grid points can be evaluated in any order
// (or in parallel) with identical output.

inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t i) {
    return mix(seed + (i + 1) * 0x9E3779B97F4A7C15ull);
}

// uniform in [0, 1), 53-bit resolution
inline double uniform(std::uint64_t seed, std::uint64_t i) {
    return static_cast<double>(at(seed, i) >> 11) * 0x1.0p-53;
}

// Convenience for sequential draws from one stream.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : seed_(seed) {}

    double next() { return uniform(seed_, n_++); }
    double range(double lo, double hi) { return lo + (hi - lo) * next(); }
    std::uint64_t bits() { return at(seed_, n_++); }
    std::uint64_t index(std::uint64_t bound) { return bits() % bound; }

private:
    std::uint64_t seed_;
    std::uint64_t n_ = 0;
};

} // namespace qtpm::rng
