#include "gridsched/rng.hpp"

#include <limits>

namespace gridsched {

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

std::size_t Rng::index(std::size_t bound) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t b = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % b);
}

}  // namespace gridsched
