#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace gridsched {

// Seeded generator with portable draws.
//
// std::uniform_real_distribution and friends are implementation-defined, so
// draws are derived directly from the raw 64-bit engine output. Streams are
// therefore identical across standard libraries, which keeps fixtures and
// traces reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream keyed by (seed, stream). Used to give each DE
    // target / PSO particle / experiment run its own generator.
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer on [0, bound). bound must be > 0.
    std::size_t index(std::size_t bound);

  private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; good avalanche for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace gridsched
