#include <chrono>
#include <cmath>
#include <vector>

#include "gridsched/baselines.hpp"
#include "gridsched/de_kernels.hpp"

namespace gridsched {

double reflect_into_range(double x, std::size_t n) {
    if (!std::isfinite(x)) throw NumericDomainError("non-finite DE component");
    const double upper = static_cast<double>(n);
    if (x >= 0.0 && x < upper) return x;
    const double period = 2.0 * upper;
    double y = std::fmod(x, period);
    if (y < 0.0) y += period;
    if (y >= upper) y = period - y;
    // Reflection maps the boundary onto itself; keep the interval half-open.
    if (y >= upper) y = std::nextafter(upper, 0.0);
    return y;
}

Assignment decode_crisp(std::span<const double> position, std::size_t n) {
    Assignment out;
    out.assignee.resize(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) {
        const double f = std::floor(position[j]);
        out.assignee[j] = f <= 0.0 ? 0 : std::min(static_cast<std::size_t>(f), n - 1);
    }
    return out;
}

RunResult crisp_de_solve(const GridInstance& instance, const SolverConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();
    const std::size_t np = config.population_size;
    const double upper = static_cast<double>(n);

    // Flat storage: genome k occupies [k * m, (k + 1) * m).
    std::vector<double> genomes(np * m);
    std::vector<double> fit(np);
    std::vector<Rng> streams;
    streams.reserve(np);
    for (std::size_t k = 0; k < np; ++k) {
        streams.push_back(target_stream(config.seed, k));
        std::span<double> g(genomes.data() + k * m, m);
        for (double& v : g) v = streams[k].uniform(0.0, upper);
        fit[k] = fitness(instance, decode_crisp(g, n));
    }

    auto genome = [&](std::size_t k) { return std::span<const double>(genomes.data() + k * m, m); };

    std::vector<double> trials(np * m);
    std::vector<double> trial_fit(np);
    auto make_trial = [&](std::size_t k) {
        const auto [a, b, c] = de::pick_donors(np, k, streams[k]);
        std::span<double> out(trials.data() + k * m, m);
        de::differential_mutation(genome(a), genome(b), genome(c), config.scaling_factor, out);
        de::binomial_crossover(genome(k), out, config.crossover_rate, streams[k], out);
        for (double& v : out) v = reflect_into_range(v, n);
        trial_fit[k] = fitness(instance, decode_crisp(out, n));
    };

    RunResult result;
    std::size_t best = 0;
    for (std::size_t k = 1; k < np; ++k) {
        if (fit[k] < fit[best]) best = k;
    }
    double best_fitness = fit[best];
    result.best_assignment = decode_crisp(genome(best), n);
    result.trace.push_back(best_fitness);

    for (std::size_t gen = 0; gen < config.max_iterations; ++gen) {
        if (config.execution == Execution::serial) {
            for (std::size_t k = 0; k < np; ++k) make_trial(k);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(np); ++k) {
                make_trial(static_cast<std::size_t>(k));
            }
        }
        for (std::size_t k = 0; k < np; ++k) {
            if (trial_fit[k] < fit[k]) {
                std::copy_n(trials.begin() + k * m, m, genomes.begin() + k * m);
                fit[k] = trial_fit[k];
            }
        }
        best = 0;
        for (std::size_t k = 1; k < np; ++k) {
            if (fit[k] < fit[best]) best = k;
        }
        if (fit[best] < best_fitness) {
            best_fitness = fit[best];
            result.best_assignment = decode_crisp(genome(best), n);
        }
        result.trace.push_back(best_fitness);
    }

    result.best_makespan = best_fitness;
    result.iterations_run = config.max_iterations;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace gridsched
