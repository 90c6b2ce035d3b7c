#include <chrono>
#include <cmath>

#include "gridsched/baselines.hpp"

namespace gridsched {

void SAConfig::validate() const {
    if (!(initial_temperature > 0.0)) throw ConfigError("SA initial temperature must be positive");
    if (!(min_temperature > 0.0)) throw ConfigError("SA minimum temperature must be positive");
    if (!(min_temperature < initial_temperature)) {
        throw ConfigError("SA minimum temperature must be below the initial temperature");
    }
    if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
        throw ConfigError("SA cooling rate must lie in (0, 1)");
    }
    if (steps_per_temperature < 1) throw ConfigError("SA needs at least one step per temperature");
}

std::size_t SAConfig::temperature_levels() const {
    validate();
    std::size_t levels = 0;
    for (double t = initial_temperature; t > min_temperature; t *= cooling_rate) ++levels;
    return levels;
}

SAConfig SAConfig::with_budget(std::size_t evaluations) const {
    SAConfig out = *this;
    const std::size_t levels = temperature_levels();
    out.steps_per_temperature = std::max<std::size_t>(1, (evaluations + levels - 1) / levels);
    return out;
}

double sa_acceptance_probability(double delta, double temperature) {
    if (delta <= 0.0) return 1.0;
    return std::exp(-delta / temperature);
}

RunResult sa_solve(const GridInstance& instance, const SAConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();
    Rng rng(config.seed);

    Assignment current;
    current.assignee.resize(m);
    for (auto& g : current.assignee) g = rng.index(n);
    double current_fitness = fitness(instance, current);

    RunResult result;
    Assignment best = current;
    double best_fitness = current_fitness;
    result.trace.push_back(best_fitness);

    std::size_t levels = 0;
    for (double t = config.initial_temperature; t > config.min_temperature;
         t *= config.cooling_rate) {
        // A single resource admits no neighbour; the lone schedule is optimal.
        for (std::size_t step = 0; n > 1 && step < config.steps_per_temperature; ++step) {
            const std::size_t job = rng.index(m);
            const std::size_t from = current.assignee[job];
            std::size_t to = rng.index(n - 1);
            if (to >= from) ++to;
            current.assignee[job] = to;
            const double candidate = fitness(instance, current);
            const double delta = candidate - current_fitness;
            if (rng.uniform01() < sa_acceptance_probability(delta, t)) {
                current_fitness = candidate;
                if (current_fitness < best_fitness) {
                    best_fitness = current_fitness;
                    best = current;
                }
            } else {
                current.assignee[job] = from;
            }
        }
        ++levels;
        result.trace.push_back(best_fitness);
    }

    result.best_assignment = std::move(best);
    result.best_makespan = best_fitness;
    result.iterations_run = levels;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace gridsched
