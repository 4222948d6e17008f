#pragma once

// Seedable PRNG used by every randomized component so that experiments are
// reproducible from (seed, stream ids) alone.
//
// Core generator: xoshiro256** (Blackman/Vigna), state seeded from the
// splitmix64 sequence of the 64-bit seed. Stream derivation folds the ids
// into the seed with the splitmix64 finalizer, giving independent streams
// per (condition, trial) without sharing state across workers.

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "charsense/errors.hpp"

namespace charsense {

/// splitmix64 finalizer: advances `state` and returns the mixed output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Folds stream ids into a seed, one splitmix64 round per id.
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> ids) {
    std::uint64_t h = seed;
    for (std::uint64_t id : ids) {
        h ^= id;
        splitmix64_next(h);
        h = splitmix64_next(h);
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    /// Independent stream for (seed, ids...); used per trial/condition.
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
        return Rng(derive_stream_seed(seed, ids));
    }

    /// xoshiro256** next 64-bit word.
    std::uint64_t next() {
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

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the paired deviate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Unbiased integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw RangeError("Rng::below: bound must be positive");
        const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t r;
        do {
            r = next();
        } while (r < rem);
        return (r - rem) % bound;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// First k entries of a Fisher-Yates shuffle of [0, n), in draw order.
/// Sparse bookkeeping keeps this O(k) in memory for large n.
inline std::vector<std::int64_t> sample_without_replacement(std::int64_t n, std::int64_t k,
                                                            Rng& rng) {
    if (k < 0 || k > n) throw RangeError("sample_without_replacement: need 0 <= k <= n");
    std::unordered_map<std::int64_t, std::int64_t> moved;
    moved.reserve(static_cast<std::size_t>(2 * k));
    auto slot = [&](std::int64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
        const std::int64_t j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - i)));
        out.push_back(slot(j));
        moved[j] = slot(i);
    }
    return out;
}

}  // namespace charsense
