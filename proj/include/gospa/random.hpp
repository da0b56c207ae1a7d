#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace gospa {

/// SplitMix64 generator. Cheap to construct, so every independent noise
/// source in the library gets its own stream keyed by derive_seed.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double normal() {
        std::normal_distribution<double> dist(0.0, 1.0);
        return dist(*this);
    }

private:
    std::uint64_t state_;
};

/// Order-sensitive hash of a seed path, e.g. (seed, node, sample, step).
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6A09E667F3BCC909ULL;
    for (std::uint64_t part : parts) {
        RandomStream mixer(h ^ (part + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
        h = mixer();
    }
    return h;
}

}  // namespace gospa
