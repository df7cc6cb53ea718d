#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gmst/errors.hpp"

namespace gmst::rng {

/// One splitmix64 step. Used for seed derivation, not as a stream generator.
inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from (seed, a, b).
/// Used so that trials indexed by (subset size, trial number) draw from
/// streams that do not depend on execution order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64_step(s);
    s ^= a * 0xD6E8FEB86659FD93ULL;
    h ^= splitmix64_step(s);
    s ^= b * 0xC2B2AE3D27D4EB4FULL;
    h ^= splitmix64_step(s);
    return h;
}

/// Seeded random stream. Wraps std::mt19937_64 but maps to doubles and
/// bounded integers by hand so that results are identical on every platform
/// (the standard pins the engine output, not the distributions).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller (single value; discards its pair).
    double next_normal() {
        double u1;
        do {
            u1 = next_unit();
        } while (u1 == 0.0);
        const double u2 = next_unit();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

/// p distinct indices drawn uniformly from [0, n), returned sorted ascending.
inline std::vector<std::size_t> sample_without_replacement(Stream& stream, std::size_t n, std::size_t p) {
    if (p > n)
        throw config_error("subset size exceeds population size");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = i;
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(stream.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(p);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace gmst::rng
