#include <chrono>
#include <vector>

#include "gridsched/baselines.hpp"

namespace gridsched {

namespace {

struct Particle {
    MembershipMatrix position;
    Matrix velocity;
    MembershipMatrix personal_best;
    double fitness = 0.0;
    double personal_best_fitness = 0.0;
};

}  // namespace

void PSOConfig::validate() const {
    if (swarm_size < 2) throw ConfigError("PSO swarm size must be at least 2");
    if (!(inertia_weight >= 0.0 && cognitive_coefficient >= 0.0 && social_coefficient >= 0.0)) {
        throw ConfigError("PSO coefficients must be non-negative");
    }
}

MembershipMatrix pso_move(const MembershipMatrix& position, Matrix& velocity,
                          const MembershipMatrix& personal_best,
                          const MembershipMatrix& global_best, const PSOConfig& config, Rng& rng) {
    const auto x = position.matrix().values();
    const auto pb = personal_best.matrix().values();
    const auto gb = global_best.matrix().values();
    auto v = velocity.values();
    Matrix moved(position.rows(), position.cols());
    auto out = moved.values();
    for (std::size_t s = 0; s < v.size(); ++s) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        v[s] = config.inertia_weight * v[s] + config.cognitive_coefficient * r1 * (pb[s] - x[s]) +
               config.social_coefficient * r2 * (gb[s] - x[s]);
        out[s] = x[s] + v[s];
    }
    return repair(moved);
}

RunResult fuzzy_pso_solve(const GridInstance& instance, const PSOConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();

    std::vector<Rng> streams;
    std::vector<Particle> swarm(config.swarm_size);
    streams.reserve(config.swarm_size);
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        streams.push_back(target_stream(config.seed, p));
        Matrix raw(n, m);
        for (double& v : raw.values()) v = streams[p].uniform01();
        Particle& particle = swarm[p];
        particle.position = repair(raw);
        particle.velocity = Matrix(n, m);
        particle.personal_best = particle.position;
        particle.fitness = fitness_of(instance, particle.position);
        particle.personal_best_fitness = particle.fitness;
    }

    std::size_t leader = 0;
    for (std::size_t p = 1; p < swarm.size(); ++p) {
        if (swarm[p].personal_best_fitness < swarm[leader].personal_best_fitness) leader = p;
    }
    MembershipMatrix global_best = swarm[leader].personal_best;
    double global_best_fitness = swarm[leader].personal_best_fitness;

    RunResult result;
    result.trace.push_back(global_best_fitness);

    // Synchronous update: every particle moves against the same gbest, which is
    // refreshed only after the whole swarm has moved.
    auto move = [&](std::size_t p) {
        Particle& particle = swarm[p];
        particle.position = pso_move(particle.position, particle.velocity, particle.personal_best,
                                     global_best, config, streams[p]);
        particle.fitness = fitness_of(instance, particle.position);
        if (particle.fitness < particle.personal_best_fitness) {
            particle.personal_best = particle.position;
            particle.personal_best_fitness = particle.fitness;
        }
    };

    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        if (config.execution == Execution::serial) {
            for (std::size_t p = 0; p < swarm.size(); ++p) move(p);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t p = 0; p < static_cast<std::int64_t>(swarm.size()); ++p) {
                move(static_cast<std::size_t>(p));
            }
        }
        std::size_t best = swarm.size();
        for (std::size_t p = 0; p < swarm.size(); ++p) {
            if (swarm[p].personal_best_fitness < global_best_fitness &&
                (best == swarm.size() ||
                 swarm[p].personal_best_fitness < swarm[best].personal_best_fitness)) {
                best = p;
            }
        }
        if (best != swarm.size()) {
            global_best = swarm[best].personal_best;
            global_best_fitness = swarm[best].personal_best_fitness;
        }
        result.trace.push_back(global_best_fitness);
    }

    result.best_assignment = defuzzify(global_best);
    result.best_makespan = global_best_fitness;
    result.iterations_run = config.max_iterations;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace gridsched
