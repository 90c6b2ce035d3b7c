#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gridsched/fuzzy_de.hpp"
#include "gridsched/model.hpp"
#include "gridsched/rng.hpp"
#include "gridsched/run_result.hpp"

// Comparison solvers. All of them minimize gridsched::fitness() and their
// default configurations spend roughly the same number of evaluations as the
// fuzzy DE defaults (about 25k).
namespace gridsched {

struct GAConfig {
    std::size_t population_size = 50;
    std::size_t max_iterations = 500;
    double crossover_rate = 0.9;
    double mutation_rate = 0.5;  // probability that a child gets one job reassigned
    std::size_t tournament_size = 3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SAConfig {
    double initial_temperature = 10.0;
    double cooling_rate = 0.97;
    std::size_t steps_per_temperature = 110;
    double min_temperature = 0.01;
    std::uint64_t seed = 0;

    void validate() const;

    // Number of temperature levels visited before T drops to min_temperature.
    std::size_t temperature_levels() const;

    // Copy with steps_per_temperature chosen so that the run spends at least
    // `evaluations` neighbour evaluations.
    SAConfig with_budget(std::size_t evaluations) const;
};

struct PSOConfig {
    std::size_t swarm_size = 50;
    std::size_t max_iterations = 500;
    double inertia_weight = 0.729;
    double cognitive_coefficient = 1.49445;
    double social_coefficient = 1.49445;
    std::uint64_t seed = 0;
    Execution execution = Execution::serial;

    void validate() const;
};

// Elitist generational GA over crisp assignments: tournament selection,
// one-point crossover, single-job reassignment mutation.
RunResult ga_solve(const GridInstance& instance, const GAConfig& config);

// exp(-delta / T) for delta > 0, otherwise 1.
double sa_acceptance_probability(double delta, double temperature);

// Simulated annealing over a single assignment. Neighbour: move one job to a
// different resource. One trace point per temperature level.
RunResult sa_solve(const GridInstance& instance, const SAConfig& config);

// Folds x into [0, n) by reflection at the bounds.
double reflect_into_range(double x, std::size_t n);

// floor(x) clamped to [0, n - 1], per component.
Assignment decode_crisp(std::span<const double> position, std::size_t n);

// DE/rand/1/bin on real vectors of length m with components in [0, n).
RunResult crisp_de_solve(const GridInstance& instance, const SolverConfig& config);

// v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x); returns repair(x + v).
// Updates `velocity` in place; r1 and r2 are drawn per slot.
MembershipMatrix pso_move(const MembershipMatrix& position, Matrix& velocity,
                          const MembershipMatrix& personal_best,
                          const MembershipMatrix& global_best, const PSOConfig& config, Rng& rng);

// PSO whose particles are membership matrices, scored through defuzzify().
RunResult fuzzy_pso_solve(const GridInstance& instance, const PSOConfig& config);

}  // namespace gridsched
