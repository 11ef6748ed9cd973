// SPDX-License-Identifier: Apache-2.0

#ifndef RANSCOPE_RNG_HPP
#define RANSCOPE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ranscope {

/// Deterministic random stream.
///
/// Wraps std::mt19937_64 (whose output sequence is pinned by the standard)
/// and hand-rolls the variate transforms, because the standard library
/// distribution classes are implementation-defined and would break
/// bit-identical reproduction across toolchains.
///
/// Independent simulation concerns (arrivals, MAC errors, RLC events, ...)
/// each own a stream derived from (seed, tag), so suppressing one concern
/// never perturbs the draws of another.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t tag)
        : engine_(mix(seed + 0x9E3779B97F4A7C15ULL * (tag + 1))) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform integer in [lo, hi] via rejection-free scaling (bias is
    /// negligible for the ranges used here and identical everywhere).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Exponential variate with the given mean.
    double exponential(double mean) {
        double u = uniform01();
        if (u <= 0.0) u = 0x1.0p-53;
        return -mean * std::log(u);
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer; decorrelates adjacent seeds and tags.
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

/// Stream tags used by the link simulator. Fixed values are part of the
/// trace-reproducibility contract.
namespace rng_tag {
inline constexpr std::uint64_t kArrivalsDl = 1;
inline constexpr std::uint64_t kArrivalsUl = 2;
inline constexpr std::uint64_t kMacErrorDl = 3;
inline constexpr std::uint64_t kMacErrorUl = 4;
inline constexpr std::uint64_t kRlcDl = 5;
inline constexpr std::uint64_t kRlcUl = 6;
inline constexpr std::uint64_t kGrant = 7;
inline constexpr std::uint64_t kOveralloc = 8;
} // namespace rng_tag

} // namespace ranscope

#endif // RANSCOPE_RNG_HPP
