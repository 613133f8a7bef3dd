#pragma once

#include <bit>
#include <cstdint>
#include <limits>

namespace surprise::rng {

/// SplitMix64 finalizer: bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives the seed of substream `index` from a parent key. Substreams are
/// addressed by counter, never by draw order, so parallel generation of
/// voters, trials and grid points is schedule-independent.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
    return mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Folds a double's bit pattern into a key (normalising -0.0 to +0.0), used
/// to key grid-point seeds on parameter values rather than grid order.
inline std::uint64_t derive_value(std::uint64_t key, double v) {
    if (v == 0.0) v = 0.0;  // collapse signed zero
    return derive(key, std::bit_cast<std::uint64_t>(v));
}

/// xoshiro256++ with SplitMix64 seed expansion. Satisfies
/// std::uniform_random_bit_generator, so it can drive the standard
/// distributions as well as the raw uniform helpers below.
class Stream {
  public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            word = mix64(x);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = std::rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_[4];
};

/// Binomial(trials, prob) draw. Degenerate probabilities short-circuit so
/// p exactly 0 or 1 stays exact.
std::int64_t binomial(Stream& stream, std::int64_t trials, double prob);

/// Hypergeometric draw: number of marked items among `draws` taken without
/// replacement from `total` items of which `marked` are marked.
std::int64_t hypergeometric(Stream& stream, std::int64_t total, std::int64_t marked,
                            std::int64_t draws);

}  // namespace surprise::rng
