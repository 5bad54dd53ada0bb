#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace convpoint {

namespace detail {

// splitmix64 finalizer; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(splitmix64(seed) ^ splitmix64(key + 0x9e3779b97f4a7c15ULL));
}

}  // namespace detail

/// Seeded random stream with portable output: the engine is mt19937_64
/// (fully specified by the standard) and the uniform/Gaussian transforms
/// are implemented here instead of relying on the implementation-defined
/// std distributions. Same seed, same draws, on every platform.
///
/// Child streams are derived from the *seed*, not the consumption state,
/// so derive(master, trial) is reproducible regardless of draw order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        // multiply-shift; bias is < 2^-64 * n, irrelevant for the n used here
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    /// Standard normal via Box-Muller. Consumes exactly two uniforms and
    /// keeps no cached state, which keeps draw schedules easy to reason
    /// about when streams are split between phases.
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    double gaussian(double mean, double stddev) {
        return mean + stddev * gaussian();
    }

    /// Independent stream derived from this stream's seed and a key.
    RngStream child(std::uint64_t key) const {
        return RngStream(detail::mix_seed(seed_, key));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Seed for one experiment cell, derived from the master seed and a list of
/// indices (function, trial, ...). Order-sensitive and collision-resistant.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = detail::splitmix64(master);
    for (std::uint64_t k : keys) s = detail::mix_seed(s, k);
    return s;
}

}  // namespace convpoint
