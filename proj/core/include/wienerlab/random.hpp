#pragma once

#include <cstdint>

namespace wienerlab {

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Identifies one reproducible random stream: the k-th draw of a stream is a
/// pure function of (seed, stream, k), so paths sampled from distinct
/// streams do not depend on evaluation order or thread count.
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    /// Derived stream for an independent purpose (e.g. auxiliary Mehler
    /// paths). Distinct tags give distinct streams.
    RandomSource split(std::uint64_t tag) const noexcept
    {
        return {seed, mix64(stream ^ mix64(tag + 0x6a09e667f3bcc909ULL))};
    }

    /// Per-path source: path k of a Monte Carlo loop driven by this source.
    RandomSource path(std::uint64_t k) const noexcept
    {
        return {seed, mix64(stream + 0x9e3779b97f4a7c15ULL) ^ k};
    }

    bool operator==(const RandomSource&) const = default;
};

/// Counter-based generator: output k is mix64(key + (k + 1) * golden).
class CounterRng {
public:
    explicit CounterRng(const RandomSource& source) noexcept
        : key_(mix64(mix64(source.seed) ^ (source.stream * 0xd1b54a32d192ed03ULL)))
    {}

    std::uint64_t next_u64() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on the open interval (0, 1).
    double next_uniform() noexcept
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; both variates of a pair are used.
    double next_normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wienerlab
