#pragma once

// Counter-based random streams for reproducible simulation.
//
// Every stochastic call site owns a RandomStream derived from
// (master_seed, structured path). Two streams built from the same
// (seed, path) replay the same draw sequence; streams with different
// paths are statistically independent. This makes single-worker runs
// bit-reproducible and lets attempts/branches be farmed out to workers
// without any shared RNG state.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>

namespace resim {

namespace detail {

// SplitMix64 finalizer (Steele et al.), full-avalanche 64-bit mix.
constexpr std::uint64_t avalanche64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kStreamDomain = 0x6a09e667f3bcc909ULL;

constexpr std::uint64_t chain(std::uint64_t key, std::uint64_t label) noexcept {
    return avalanche64(key ^ avalanche64(label + kGolden));
}

}  // namespace detail

// Derive a child seed from a master seed and a label path. Used by the
// harness for per-(sweep point, replication) seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::span<const std::uint64_t> path) noexcept {
    std::uint64_t key = detail::avalanche64(master_seed ^ detail::kStreamDomain);
    for (std::uint64_t label : path) key = detail::chain(key, label);
    return key;
}

inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::initializer_list<std::uint64_t> path) noexcept {
    return derive_seed(master_seed, std::span<const std::uint64_t>(path.begin(), path.size()));
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t master_seed,
                          std::span<const std::uint64_t> path = {}) noexcept
        : state_(derive_seed(master_seed, path)) {}

    RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path) noexcept
        : state_(derive_seed(master_seed, path)) {}

    // SplitMix64 step from the derived stream key.
    std::uint64_t next_u64() noexcept {
        state_ += detail::kGolden;
        return detail::avalanche64(state_);
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Consumes exactly two 64-bit draws
    // per call so the draw count stays call-deterministic.
    double next_normal() noexcept {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool next_bernoulli(double p) noexcept { return next_uniform() < p; }

    // Uniform integer in [0, n).
    std::uint64_t next_index(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(next_uniform() * static_cast<double>(n)) % n;
    }

private:
    std::uint64_t state_;
};

}  // namespace resim
