#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gridsched/model.hpp"
#include "gridsched/rng.hpp"
#include "gridsched/run_result.hpp"

namespace gridsched {

// DE control parameters. Defaults are the canonical DE/rand/1/bin settings.
struct SolverConfig {
    double scaling_factor = 0.5;  // F, in (0, 2]
    double crossover_rate = 0.9;  // CR, in [0, 1]
    std::size_t population_size = 50;
    std::size_t max_iterations = 500;
    std::uint64_t seed = 0;
    Execution execution = Execution::serial;

    // Throws ConfigError on out-of-range values.
    void validate() const;
};

struct Individual {
    MembershipMatrix genome;
    double fitness = 0.0;
};

// Fitness of a fuzzy genome: defuzzify, then evaluate the crisp schedule.
double fitness_of(const GridInstance& instance, const MembershipMatrix& genome);

// Generator for target k's draws; also used to seed individual k at init.
Rng target_stream(std::uint64_t seed, std::size_t k);

// NP random individuals: uniform(0,1) entries, each column normalized to 1.
// Individual k is drawn from its own substream of config.seed.
std::vector<Individual> init_population(const GridInstance& instance, const SolverConfig& config);

// Mutant Z_a + F (Z_b - Z_c) for target k with donors drawn from rng. The
// result is raw; it may leave [0, 1] and break the column sums.
Matrix mutate(std::span<const Individual> population, std::size_t target, double scaling_factor,
              Rng& rng);

// Binomial crossover of a target genome with a raw mutant.
Matrix crossover(const MembershipMatrix& target, const Matrix& mutant, double crossover_rate,
                 Rng& rng);

// Greedy selection: the trial wins only on strictly lower fitness.
const Individual& select(const Individual& target, const Individual& trial);

// One trial per target: mutate, crossover, repair, evaluate. streams[k] feeds
// target k. The parallel mode produces the same trials as the serial one.
std::vector<Individual> generate_trials(const GridInstance& instance,
                                        std::span<const Individual> population,
                                        const SolverConfig& config, std::span<Rng> streams,
                                        Execution execution);

// Stepwise driver, exposed so tests can inspect every generation.
class FuzzyDifferentialEvolution {
  public:
    FuzzyDifferentialEvolution(const GridInstance& instance, SolverConfig config);

    void step();
    RunResult run();

    std::size_t generation() const { return generation_; }
    const std::vector<Individual>& population() const { return population_; }
    const std::vector<Individual>& last_trials() const { return trials_; }
    const std::vector<double>& trace() const { return trace_; }
    double best_fitness() const { return best_fitness_; }
    const Assignment& best_assignment() const { return best_assignment_; }

  private:
    void record_best();

    const GridInstance& instance_;
    SolverConfig config_;
    std::vector<Rng> streams_;
    std::vector<Individual> population_;
    std::vector<Individual> trials_;
    std::vector<double> trace_;
    Assignment best_assignment_;
    double best_fitness_ = 0.0;
    std::size_t generation_ = 0;
};

// Grid job scheduling with fuzzy DE: init, then max_iterations generations of
// trial generation and population-wide selection.
RunResult solve(const GridInstance& instance, const SolverConfig& config);

}  // namespace gridsched
