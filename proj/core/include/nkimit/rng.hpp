#pragma once

#include <cstdint>
#include <random>

namespace nkimit {

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// (seed, index) pair so results never depend on execution order.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

// Stream tags. Each consumer of randomness draws from its own derived stream.
enum class Stream : std::uint64_t {
    kLandscape = 1,
    kTopology = 2,
    kSearch = 3,
    kCorrelation = 4,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
    return derive_seed(seed, static_cast<std::uint64_t>(stream) << 56);
}

// std::mt19937_64 engine with hand-written distributions. The standard
// <random> distributions are implementation-defined, so they are avoided to
// keep every draw bit-identical across platforms and standard libraries.
__extension__ using uint128 = unsigned __int128;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's nearly divisionless method with rejection.
        uint128 m = static_cast<uint128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<uint128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace nkimit
