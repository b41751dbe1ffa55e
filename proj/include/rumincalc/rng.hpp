#pragma once

#include <cstdint>

namespace rumincalc {

// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based generator: every output is a pure function of
// (seed, stream, counter). Streams never overlap, draws can be replayed in
// any order, and a run is reproducible bit for bit no matter how the work is
// sharded. Each draw walks the SplitMix64 sequence whose state is the
// stream key plus counter * golden ratio.
class CounterRng {
  public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(mix64(seed + kGolden) ^ (stream + kGolden))) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Stable derivation of per-point sub-seeds, so independent estimates inside
// one experiment draw from disjoint streams of the user's seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
    return mix64(seed + CounterRng::kGolden * (salt + 1)) ^ mix64(index + CounterRng::kGolden);
}

}  // namespace rumincalc
