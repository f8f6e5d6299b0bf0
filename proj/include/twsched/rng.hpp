#pragma once

#include <array>
#include <cstdint>

namespace twsched {

// xoshiro256** (Blackman & Vigna, public domain), state expanded from the
// seed with splitmix64.  Hand-rolled instead of <random> engines because the
// exact byte-for-byte output stream is part of the reproducibility contract:
// results must not change across standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = mix(x += 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, n).  Multiply-shift mapping; the bias is below n / 2^64,
    // which is irrelevant at the n <= a few hundred used here.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // splitmix64 finalizer; also used standalone to derive stream seeds.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Decorrelated child seed for (division, lane).  The simulator keys
    // divisions by replication and uses lane 0 for the arrival stream and
    // lane 1+p for policy p's own randomness, so every policy inside one
    // replication sees the identical arrival sequence while no two lanes
    // share their generator state.
    static constexpr std::uint64_t derive(std::uint64_t base, std::uint64_t division,
                                          std::uint64_t lane) {
        std::uint64_t z = mix(base + 0x9E3779B97F4A7C15ULL);
        z = mix(z ^ (division * 0xA24BAED4963EE407ULL + 1));
        z = mix(z ^ (lane * 0x9FB21C651E98DF25ULL + 1));
        return z;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_{};
};

} // namespace twsched
