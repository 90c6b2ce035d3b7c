#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridsched/baselines.hpp"
#include "gridsched/datasets.hpp"
#include "gridsched/fuzzy_de.hpp"
#include "gridsched/run_result.hpp"

namespace gridsched {

enum class Algorithm { fuzzy_de, de, ga, sa, fuzzy_pso };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::ga, Algorithm::sa, Algorithm::fuzzy_pso,
                                               Algorithm::de, Algorithm::fuzzy_de};

// CLI selector: "fuzzy-de", "de", "ga", "sa", "fuzzy-pso".
std::string_view algorithm_name(Algorithm algorithm);
// Table row title: "Fuzzy DE", "DE", "GA", "SA", "Fuzzy PSO".
std::string_view algorithm_title(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// One algorithm with its full configuration.
struct SolverSpec {
    Algorithm algorithm = Algorithm::fuzzy_de;
    SolverConfig de;
    GAConfig ga;
    SAConfig sa;
    PSOConfig pso;

    static SolverSpec defaults(Algorithm algorithm);

    // Population/swarm size and iteration count for every population method;
    // SA gets the equivalent evaluation budget.
    void set_budget(std::size_t population, std::size_t iterations);

    RunResult run(const GridInstance& instance, std::uint64_t seed) const;
};

struct StatsSummary {
    std::string algorithm;
    std::string instance;
    std::size_t runs = 0;
    double mean_makespan = 0.0;
    double stddev_makespan = 0.0;  // population (divide by N)
    double mean_wall_time = 0.0;
    std::vector<double> per_run_makespans;
};

struct Experiment {
    StatsSummary summary;
    std::vector<RunResult> runs;
};

// A solver failure inside run_experiment, tagged with the failing run.
class ExperimentError : public Error {
  public:
    ExperimentError(std::size_t run, const std::string& what)
        : Error("run " + std::to_string(run) + ": " + what), run_(run) {}
    std::size_t run() const { return run_; }

  private:
    std::size_t run_;
};

double mean(std::span<const double> values);
double population_stddev(std::span<const double> values);

// `runs` independent solves with seeds master_seed + r. Parallel execution
// spreads runs over up to `threads` OpenMP threads (0 = runtime default) and
// yields the same summary as serial execution.
Experiment run_experiment(const GridInstance& instance, std::string_view instance_name,
                          const SolverSpec& solver, std::size_t runs, std::uint64_t master_seed,
                          Execution execution = Execution::serial, int threads = 0);

// Algorithms x instances grid of values (means, stddevs, deltas).
struct MeanTable {
    std::vector<std::string> algorithms;
    std::vector<std::string> instances;
    std::vector<std::vector<double>> values;  // values[algorithm][instance]

    double at(std::string_view algorithm, std::string_view instance) const;
};

struct RelativeTable {
    std::vector<std::string> algorithms;
    std::vector<std::string> instances;
    std::vector<std::vector<double>> delta;  // mean[alg] - mean[baseline]
    std::vector<double> average;             // arithmetic mean of each row
};

// Difference of every row against the baseline row. Throws ConfigError when
// the baseline is missing or no other row exists.
RelativeTable relative_performance(const MeanTable& means, std::string_view baseline);

enum class Statistic { mean, stddev, wall_time };

// Collect a statistic from experiments into a grid, rows and columns in the
// order given.
MeanTable tabulate(std::span<const Experiment> experiments, std::span<const std::string> algorithms,
                   std::span<const std::string> instances, Statistic statistic);

std::string format_table(const MeanTable& table, std::string_view title);
std::string format_relative_table(const RelativeTable& table, std::string_view title);

// Writes runs.csv (run_id,algorithm,instance,makespan,wall_time_s) and
// traces.csv (algorithm,instance,generation,best_makespan) into `directory`.
// Throws ConfigError on empty input (nothing is written) and MissingFile
// when the directory is not writable.
void export_csv(std::span<const Experiment> experiments, const std::filesystem::path& directory);

}  // namespace gridsched
