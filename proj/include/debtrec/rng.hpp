#pragma once

// Random streams for the Monte Carlo engine.
//
// Each path owns a std::mt19937_64 seeded with path_seed(master, index),
// where path_seed is output number index+1 of a SplitMix64 sequence started
// at `master`. Uniforms take the top 53 bits of a generator word; normals
// come from the Marsaglia polar method with the second variate cached.
// All of these are fixed algorithms, so streams are stable across platforms
// and releases.

#include <cstdint>
#include <random>

namespace debtrec {

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path_index) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal variate.
    double normal() noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace debtrec
