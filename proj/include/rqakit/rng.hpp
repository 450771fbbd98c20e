#pragma once

#include <cstdint>
#include <limits>

namespace rqakit {

// SplitMix64 finalizer (Steele/Lea/Flood). Used for seed expansion and
// sub-stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream `index` of `master`. Distinct indices give
// statistically independent streams, so parallel tasks can each own one.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index ^ 0x517cc1b727220a95ULL));
}

// xoshiro256++ (Blackman & Vigna, 2019). State is expanded from the seed
// with SplitMix64 as the authors recommend; never all-zero.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr std::uint64_t operator()() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound). Lemire's multiply-shift with rejection.
    constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
        unsigned __int128 product = static_cast<unsigned __int128>(operator()()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(operator()()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

} // namespace rqakit
