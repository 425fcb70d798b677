#pragma once

#include <cstdint>
#include <random>

namespace spinsim::rng {

// std::mt19937_64 is fully specified by the standard, so seeded streams are
// reproducible across platforms. std::uniform_real_distribution is not; all
// real draws go through an explicit 53-bit mapping instead.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Sub-seed for stream `index` of a master seed. Used for per-realization,
// per-trajectory and per-step streams so parallel runs stay reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9e3779b97f4a7c15ull * (index + 1));
}

class Prng {
public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n); n must be small against 2^53
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace spinsim::rng
