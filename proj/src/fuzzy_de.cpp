#include "gridsched/fuzzy_de.hpp"

#include <chrono>
#include <cmath>

#include "gridsched/de_kernels.hpp"

namespace gridsched {

namespace {

constexpr std::uint64_t kTargetStreamBase = 0;

Individual random_individual(const GridInstance& instance, Rng& rng) {
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();
    Matrix raw(n, m);
    for (double& v : raw.values()) v = rng.uniform01();
    Individual ind{repair(raw), 0.0};
    ind.fitness = fitness_of(instance, ind.genome);
    return ind;
}

Individual make_trial(const GridInstance& instance, std::span<const Individual> population,
                      std::size_t k, const SolverConfig& config, Rng& rng) {
    const Matrix mutant = mutate(population, k, config.scaling_factor, rng);
    const Matrix raw = crossover(population[k].genome, mutant, config.crossover_rate, rng);
    Individual trial{repair(raw), 0.0};
    trial.fitness = fitness_of(instance, trial.genome);
    return trial;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(scaling_factor > 0.0 && scaling_factor <= 2.0)) {
        throw ConfigError("scaling factor F must lie in (0, 2]");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw ConfigError("crossover rate CR must lie in [0, 1]");
    }
    if (population_size < 4) throw ConfigError("population size must be at least 4");
}

double fitness_of(const GridInstance& instance, const MembershipMatrix& genome) {
    return fitness(instance, defuzzify(genome));
}

Rng target_stream(std::uint64_t seed, std::size_t k) {
    return Rng::substream(seed, kTargetStreamBase + k);
}

std::vector<Individual> init_population(const GridInstance& instance, const SolverConfig& config) {
    config.validate();
    std::vector<Individual> population;
    population.reserve(config.population_size);
    for (std::size_t k = 0; k < config.population_size; ++k) {
        Rng rng = target_stream(config.seed, k);
        population.push_back(random_individual(instance, rng));
    }
    return population;
}

Matrix mutate(std::span<const Individual> population, std::size_t target, double scaling_factor,
              Rng& rng) {
    const auto [a, b, c] = de::pick_donors(population.size(), target, rng);
    const Matrix& base = population[a].genome.matrix();
    Matrix out(base.rows(), base.cols());
    de::differential_mutation(base.values(), population[b].genome.matrix().values(),
                              population[c].genome.matrix().values(), scaling_factor, out.values());
    return out;
}

Matrix crossover(const MembershipMatrix& target, const Matrix& mutant, double crossover_rate,
                 Rng& rng) {
    if (target.rows() != mutant.rows() || target.cols() != mutant.cols()) {
        throw ConfigError("crossover of matrices with different shapes");
    }
    Matrix out(mutant.rows(), mutant.cols());
    de::binomial_crossover(target.matrix().values(), mutant.values(), crossover_rate, rng,
                           out.values());
    return out;
}

const Individual& select(const Individual& target, const Individual& trial) {
    return trial.fitness < target.fitness ? trial : target;
}

std::vector<Individual> generate_trials(const GridInstance& instance,
                                        std::span<const Individual> population,
                                        const SolverConfig& config, std::span<Rng> streams,
                                        Execution execution) {
    const std::size_t np = population.size();
    std::vector<Individual> trials(np);
    if (execution == Execution::serial) {
        for (std::size_t k = 0; k < np; ++k) {
            trials[k] = make_trial(instance, population, k, config, streams[k]);
        }
        return trials;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(np); ++k) {
        const auto t = static_cast<std::size_t>(k);
        trials[t] = make_trial(instance, population, t, config, streams[t]);
    }
    return trials;
}

FuzzyDifferentialEvolution::FuzzyDifferentialEvolution(const GridInstance& instance,
                                                       SolverConfig config)
    : instance_(instance), config_(config) {
    config_.validate();
    streams_.reserve(config_.population_size);
    population_.reserve(config_.population_size);
    for (std::size_t k = 0; k < config_.population_size; ++k) {
        streams_.push_back(target_stream(config_.seed, k));
        population_.push_back(random_individual(instance_, streams_.back()));
    }
    record_best();
}

void FuzzyDifferentialEvolution::step() {
    trials_ = generate_trials(instance_, population_, config_, streams_, config_.execution);
    for (std::size_t k = 0; k < population_.size(); ++k) {
        if (&select(population_[k], trials_[k]) == &trials_[k]) population_[k] = trials_[k];
    }
    ++generation_;
    record_best();
}

void FuzzyDifferentialEvolution::record_best() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < population_.size(); ++k) {
        if (population_[k].fitness < population_[best].fitness) best = k;
    }
    if (trace_.empty() || population_[best].fitness < best_fitness_) {
        best_fitness_ = population_[best].fitness;
        best_assignment_ = defuzzify(population_[best].genome);
    }
    trace_.push_back(best_fitness_);
}

RunResult FuzzyDifferentialEvolution::run() {
    const auto start = std::chrono::steady_clock::now();
    while (generation_ < config_.max_iterations) step();
    const auto stop = std::chrono::steady_clock::now();
    RunResult result;
    result.best_assignment = best_assignment_;
    result.best_makespan = best_fitness_;
    result.trace = trace_;
    result.wall_time = std::chrono::duration<double>(stop - start).count();
    result.iterations_run = generation_;
    return result;
}

RunResult solve(const GridInstance& instance, const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    FuzzyDifferentialEvolution engine(instance, config);
    RunResult result = engine.run();
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace gridsched
