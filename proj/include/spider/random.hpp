#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

namespace spider {

/// Deterministic uniform stream. Equal seeds give bit-identical draw
/// sequences on every platform: mt19937_64 is fully specified by the
/// standard and the [0,1) mapping below uses the top 53 bits directly
/// (std::uniform_real_distribution is implementation-defined, so it is
/// avoided).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    /// Uniform integer in [0, n). Requires n >= 1.
    std::size_t uniform_index(std::size_t n) {
        const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return std::min(k, n - 1);
    }

    /// Child stream derived from this stream's seed and a purpose tag.
    /// The derivation depends only on (seed, tag), never on draws made
    /// so far, so substreams can be created in any order.
    RandomStream substream(std::uint64_t tag) const {
        return RandomStream(mix(seed_ ^ (0x9E3779B97F4A7C15ull * (tag + 1))));
    }

    std::uint64_t seed() const { return seed_; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace spider
