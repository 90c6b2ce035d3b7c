#include "gridsched/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace gridsched {

namespace {

std::string decimal(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string display_name(const std::string& name) {
    const auto algo = parse_algorithm(name);
    return algo ? std::string(algorithm_title(*algo)) : name;
}

std::size_t index_of(const std::vector<std::string>& names, std::string_view key) {
    const auto it = std::find(names.begin(), names.end(), key);
    return it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
}

constexpr int kTitleWidth = 11;
constexpr int kCellWidth = 12;

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::fuzzy_de: return "fuzzy-de";
        case Algorithm::de: return "de";
        case Algorithm::ga: return "ga";
        case Algorithm::sa: return "sa";
        case Algorithm::fuzzy_pso: return "fuzzy-pso";
    }
    return "?";
}

std::string_view algorithm_title(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::fuzzy_de: return "Fuzzy DE";
        case Algorithm::de: return "DE";
        case Algorithm::ga: return "GA";
        case Algorithm::sa: return "SA";
        case Algorithm::fuzzy_pso: return "Fuzzy PSO";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms) {
        if (algorithm_name(a) == name) return a;
    }
    return std::nullopt;
}

SolverSpec SolverSpec::defaults(Algorithm algorithm) {
    SolverSpec spec;
    spec.algorithm = algorithm;
    return spec;
}

void SolverSpec::set_budget(std::size_t population, std::size_t iterations) {
    de.population_size = population;
    de.max_iterations = iterations;
    ga.population_size = population;
    ga.max_iterations = iterations;
    pso.swarm_size = population;
    pso.max_iterations = iterations;
    sa = sa.with_budget(population * iterations);
}

RunResult SolverSpec::run(const GridInstance& instance, std::uint64_t seed) const {
    switch (algorithm) {
        case Algorithm::fuzzy_de: {
            SolverConfig c = de;
            c.seed = seed;
            return solve(instance, c);
        }
        case Algorithm::de: {
            SolverConfig c = de;
            c.seed = seed;
            return crisp_de_solve(instance, c);
        }
        case Algorithm::ga: {
            GAConfig c = ga;
            c.seed = seed;
            return ga_solve(instance, c);
        }
        case Algorithm::sa: {
            SAConfig c = sa;
            c.seed = seed;
            return sa_solve(instance, c);
        }
        case Algorithm::fuzzy_pso: {
            PSOConfig c = pso;
            c.seed = seed;
            return fuzzy_pso_solve(instance, c);
        }
    }
    throw ConfigError("unknown algorithm");
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_stddev(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

Experiment run_experiment(const GridInstance& instance, std::string_view instance_name,
                          const SolverSpec& solver, std::size_t runs, std::uint64_t master_seed,
                          Execution execution, int threads) {
    if (runs < 1) throw ConfigError("an experiment needs at least one run");

    Experiment out;
    out.runs.resize(runs);
    std::vector<std::exception_ptr> failures(runs);

    auto one = [&](std::size_t r) {
        try {
            out.runs[r] = solver.run(instance, master_seed + r);
        } catch (...) {
            failures[r] = std::current_exception();
        }
    };

    if (execution == Execution::serial) {
        for (std::size_t r = 0; r < runs; ++r) one(r);
    } else {
        const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(runs); ++r) {
            one(static_cast<std::size_t>(r));
        }
    }

    for (std::size_t r = 0; r < runs; ++r) {
        if (!failures[r]) continue;
        try {
            std::rethrow_exception(failures[r]);
        } catch (const std::exception& e) {
            throw ExperimentError(r, e.what());
        }
    }

    StatsSummary& s = out.summary;
    s.algorithm = std::string(algorithm_name(solver.algorithm));
    s.instance = std::string(instance_name);
    s.runs = runs;
    std::vector<double> times;
    for (const auto& run : out.runs) {
        s.per_run_makespans.push_back(run.best_makespan);
        times.push_back(run.wall_time);
    }
    s.mean_makespan = mean(s.per_run_makespans);
    s.stddev_makespan = population_stddev(s.per_run_makespans);
    s.mean_wall_time = mean(times);
    return out;
}

double MeanTable::at(std::string_view algorithm, std::string_view instance) const {
    const std::size_t a = index_of(algorithms, algorithm);
    const std::size_t i = index_of(instances, instance);
    if (a == algorithms.size() || i == instances.size()) {
        throw ConfigError("no table cell for " + std::string(algorithm) + " / " +
                          std::string(instance));
    }
    return values[a][i];
}

RelativeTable relative_performance(const MeanTable& means, std::string_view baseline) {
    const std::size_t base = index_of(means.algorithms, baseline);
    if (base == means.algorithms.size()) {
        throw ConfigError("baseline row '" + std::string(baseline) + "' missing");
    }
    if (means.algorithms.size() < 2) throw ConfigError("nothing to compare against the baseline");

    RelativeTable out;
    out.algorithms = means.algorithms;
    out.instances = means.instances;
    for (std::size_t a = 0; a < means.algorithms.size(); ++a) {
        std::vector<double> row(means.instances.size());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = means.values[a][i] - means.values[base][i];
        out.average.push_back(mean(row));
        out.delta.push_back(std::move(row));
    }
    return out;
}

MeanTable tabulate(std::span<const Experiment> experiments, std::span<const std::string> algorithms,
                   std::span<const std::string> instances, Statistic statistic) {
    MeanTable table;
    table.algorithms.assign(algorithms.begin(), algorithms.end());
    table.instances.assign(instances.begin(), instances.end());
    table.values.assign(algorithms.size(), std::vector<double>(instances.size(), std::nan("")));
    for (const auto& e : experiments) {
        const std::size_t a = index_of(table.algorithms, e.summary.algorithm);
        const std::size_t i = index_of(table.instances, e.summary.instance);
        if (a == table.algorithms.size() || i == table.instances.size()) continue;
        switch (statistic) {
            case Statistic::mean: table.values[a][i] = e.summary.mean_makespan; break;
            case Statistic::stddev: table.values[a][i] = e.summary.stddev_makespan; break;
            case Statistic::wall_time: table.values[a][i] = e.summary.mean_wall_time; break;
        }
    }
    return table;
}

std::string format_table(const MeanTable& table, std::string_view title) {
    std::ostringstream os;
    os << title << '\n' << std::left << std::setw(kTitleWidth) << "Algorithm";
    for (const auto& inst : table.instances) os << std::right << std::setw(kCellWidth) << inst;
    os << '\n';
    os << std::fixed << std::setprecision(4);
    for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
        os << std::left << std::setw(kTitleWidth) << display_name(table.algorithms[a]);
        for (double v : table.values[a]) os << std::right << std::setw(kCellWidth) << v;
        os << '\n';
    }
    return os.str();
}

std::string format_relative_table(const RelativeTable& table, std::string_view title) {
    std::ostringstream os;
    os << title << '\n' << std::left << std::setw(kTitleWidth) << "Algorithm";
    for (const auto& inst : table.instances) os << std::right << std::setw(kCellWidth) << inst;
    os << std::right << std::setw(kCellWidth) << "Average" << '\n';
    os << std::fixed << std::setprecision(5);
    for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
        os << std::left << std::setw(kTitleWidth) << display_name(table.algorithms[a]);
        for (double v : table.delta[a]) os << std::right << std::setw(kCellWidth) << v;
        os << std::right << std::setw(kCellWidth) << table.average[a] << '\n';
    }
    return os.str();
}

void export_csv(std::span<const Experiment> experiments, const std::filesystem::path& directory) {
    if (experiments.empty()) throw ConfigError("no results to export");

    std::ostringstream runs;
    std::ostringstream traces;
    runs << "run_id,algorithm,instance,makespan,wall_time_s\n";
    traces << "algorithm,instance,generation,best_makespan\n";
    for (const auto& e : experiments) {
        const auto& s = e.summary;
        for (std::size_t r = 0; r < e.runs.size(); ++r) {
            runs << r << ',' << s.algorithm << ',' << s.instance << ','
                 << decimal(e.runs[r].best_makespan) << ',' << decimal(e.runs[r].wall_time) << '\n';
        }
        // Traces are long; only the first run of each experiment is kept.
        if (!e.runs.empty()) {
            const auto& trace = e.runs.front().trace;
            for (std::size_t g = 0; g < trace.size(); ++g) {
                traces << s.algorithm << ',' << s.instance << ',' << g << ',' << decimal(trace[g])
                       << '\n';
            }
        }
    }

    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw MissingFile("cannot write " + path.string());
        out << text;
        if (!out) throw MissingFile("failed writing " + path.string());
    };
    write(directory / "runs.csv", runs.str());
    write(directory / "traces.csv", traces.str());
}

}  // namespace gridsched
