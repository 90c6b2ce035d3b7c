#include "gridsched/de_kernels.hpp"

#include "gridsched/error.hpp"

namespace gridsched::de {

std::array<std::size_t, 3> pick_donors(std::size_t population_size, std::size_t target, Rng& rng) {
    if (population_size < 4) throw ConfigError("DE mutation needs a population of at least 4");
    std::array<std::size_t, 3> picked{};
    for (std::size_t slot = 0; slot < picked.size(); ++slot) {
        std::size_t candidate = 0;
        bool clash = true;
        while (clash) {
            candidate = rng.index(population_size);
            clash = candidate == target;
            for (std::size_t prev = 0; prev < slot && !clash; ++prev) clash = picked[prev] == candidate;
        }
        picked[slot] = candidate;
    }
    return picked;
}

void differential_mutation(std::span<const double> base, std::span<const double> plus,
                           std::span<const double> minus, double scale, std::span<double> out) {
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = base[s] + scale * (plus[s] - minus[s]);
}

void binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                        double crossover_rate, Rng& rng, std::span<double> out) {
    const std::size_t forced = rng.index(out.size());
    for (std::size_t s = 0; s < out.size(); ++s) {
        const double r = rng.uniform01();
        out[s] = (r < crossover_rate || s == forced) ? mutant[s] : target[s];
    }
}

}  // namespace gridsched::de
