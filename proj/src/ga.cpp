#include <chrono>
#include <utility>
#include <vector>

#include "gridsched/baselines.hpp"

namespace gridsched {

namespace {

struct Chromosome {
    Assignment genes;
    double fitness = 0.0;
};

std::size_t tournament(const std::vector<Chromosome>& pop, std::size_t size, Rng& rng) {
    std::size_t best = rng.index(pop.size());
    for (std::size_t t = 1; t < size; ++t) {
        const std::size_t c = rng.index(pop.size());
        if (pop[c].fitness < pop[best].fitness) best = c;
    }
    return best;
}

std::size_t fittest(const std::vector<Chromosome>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].fitness < pop[best].fitness) best = i;
    }
    return best;
}

}  // namespace

void GAConfig::validate() const {
    if (population_size < 2) throw ConfigError("GA population size must be at least 2");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw ConfigError("GA crossover rate must lie in [0, 1]");
    }
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw ConfigError("GA mutation rate must lie in [0, 1]");
    }
    if (tournament_size < 1) throw ConfigError("GA tournament size must be at least 1");
}

RunResult ga_solve(const GridInstance& instance, const GAConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();
    Rng rng(config.seed);

    std::vector<Chromosome> pop(config.population_size);
    for (auto& c : pop) {
        c.genes.assignee.resize(m);
        for (auto& g : c.genes.assignee) g = rng.index(n);
        c.fitness = fitness(instance, c.genes);
    }

    RunResult result;
    Chromosome best = pop[fittest(pop)];
    result.trace.push_back(best.fitness);

    std::vector<Chromosome> next;
    next.reserve(pop.size());
    for (std::size_t gen = 0; gen < config.max_iterations; ++gen) {
        next.clear();
        next.push_back(pop[fittest(pop)]);  // elite survives unchanged
        while (next.size() < pop.size()) {
            const Chromosome& a = pop[tournament(pop, config.tournament_size, rng)];
            const Chromosome& b = pop[tournament(pop, config.tournament_size, rng)];
            Chromosome child{a.genes, 0.0};
            if (m > 1 && rng.uniform01() < config.crossover_rate) {
                const std::size_t cut = 1 + rng.index(m - 1);
                for (std::size_t j = cut; j < m; ++j) child.genes.assignee[j] = b.genes.assignee[j];
            }
            if (rng.uniform01() < config.mutation_rate) {
                child.genes.assignee[rng.index(m)] = rng.index(n);
            }
            child.fitness = fitness(instance, child.genes);
            next.push_back(std::move(child));
        }
        std::swap(pop, next);
        const Chromosome& leader = pop[fittest(pop)];
        if (leader.fitness < best.fitness) best = leader;
        result.trace.push_back(best.fitness);
    }

    result.best_assignment = best.genes;
    result.best_makespan = best.fitness;
    result.iterations_run = config.max_iterations;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace gridsched
