#pragma once

#include <cstdint>
#include <vector>

namespace nanohydra {

// splitmix64: tiny counter-based generator with a fixed, platform-independent
// output sequence. Used everywhere reproducibility across runs is part of the
// contract (kernel sampling, epoch shuffling).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound). Modulo bias is < bound/2^64, irrelevant for
    // the shuffle sizes used here.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Stream seed for the (projection view, kernel group) pair: root seed xored
// with a stable mix of the indices, so regenerating any group is independent
// of generation order.
inline std::uint64_t stream_seed(std::uint64_t root, std::uint64_t view, std::uint64_t group) {
    SplitMix64 mix(root ^ (view * 0xD1B54A32D192ED03ULL) ^ (group * 0x8CB92BA72F3D8DD7ULL));
    return mix.next();
}

// Fisher-Yates with an explicit generator: std::shuffle's draw sequence is
// implementation-defined, which would leak into the trained weights.
template <typename T>
void seeded_shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace nanohydra
