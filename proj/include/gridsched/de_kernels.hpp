#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "gridsched/rng.hpp"

// Encoding-agnostic DE/rand/1/bin building blocks over flat genomes. The fuzzy
// scheduler applies them to membership matrices, crisp DE to job vectors.
namespace gridsched::de {

// Three population indices, mutually distinct and distinct from `target`.
// Requires population_size >= 4.
std::array<std::size_t, 3> pick_donors(std::size_t population_size, std::size_t target, Rng& rng);

// out = base + scale * (plus - minus), elementwise.
void differential_mutation(std::span<const double> base, std::span<const double> plus,
                           std::span<const double> minus, double scale, std::span<double> out);

// Binomial crossover. One forced slot is drawn first (uniform over the genome),
// then one uniform r per slot in storage order; slot s takes the mutant value
// when r < crossover_rate or s is the forced slot. `out` may alias `mutant`.
void binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                        double crossover_rate, Rng& rng, std::span<double> out);

}  // namespace gridsched::de
