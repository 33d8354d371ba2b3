#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace jamguard {

// splitmix64 finalizer. Counter-mode: mix(seed + k*GAMMA) is the k-th output.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Key derivation: folds ids into a seed so that streams for distinct
// (key, slot, symbol, trial, ...) tuples are statistically independent.
inline constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> ids) noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t id : ids) h = mix64(h + 0x9e3779b97f4a7c15ull + id);
    return h;
}

// Deterministic keyed random stream. The state advances by a fixed odd
// increment and every output is a mix of the counter, so a stream is a pure
// function of its seed; no global state anywhere.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

    static RandomStream from_ids(std::initializer_list<std::uint64_t> ids) noexcept {
        return RandomStream(derive_seed(ids));
    }

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform in [0,1), 53-bit resolution.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound). Lemire rejection method.
    std::uint32_t next_below(std::uint32_t bound) noexcept {
        std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next_u64())) * bound;
        auto lo = static_cast<std::uint32_t>(m);
        if (lo < bound) {
            std::uint32_t threshold = (0u - bound) % bound;
            while (lo < threshold) {
                m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next_u64())) * bound;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    // Box-Muller; both halves of the pair are consumed, so no cached state.
    std::complex<double> next_cgauss(double variance) noexcept {
        double u1 = 1.0 - next_unit();  // (0,1], keeps the log finite
        double u2 = next_unit();
        double r = std::sqrt(-variance * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    double next_exp(double mean) noexcept {
        return -mean * std::log(1.0 - next_unit());
    }

  private:
    std::uint64_t state_;
};

}  // namespace jamguard
