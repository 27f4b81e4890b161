// rng.hpp — deterministic, platform-independent random streams
//
// The optimizer derives one stream per (seed, generation, candidate) so that
// results are bit-identical regardless of thread scheduling. std:: engines are
// avoided because distribution output is implementation-defined.

#pragma once

#include <array>
#include <cstdint>

namespace opss {

inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    // Independent stream addressed by (seed, a, b).
    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
        std::uint64_t s = seed;
        std::uint64_t mixed = splitmix64_next(s);
        s = mixed ^ (0x9e3779b97f4a7c15ULL * (a + 1));
        mixed = splitmix64_next(s);
        s = mixed ^ (0xbf58476d1ce4e5b9ULL * (b + 1));
        return Rng(splitmix64_next(s));
    }

    std::uint64_t next_u64() noexcept {
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

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Lemire reduction, deterministic everywhere.
    int uniform_int(int n) noexcept {
        const auto wide = static_cast<unsigned __int128>(next_u64()) * static_cast<std::uint64_t>(n);
        return static_cast<int>(wide >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace opss
