#pragma once

#include <cstdint>
#include <limits>

namespace zeroerr {

/// SplitMix64. Reference outputs for seed 0:
///   0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f.
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions,
/// but the helpers below are used wherever bit-exact reproducibility matters.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v;
        do {
            v = (*this)();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Seed for sub-stream `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    SplitMix64 g(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return g();
}

} // namespace zeroerr
