#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gridsched/bench.hpp"
#include "gridsched/datasets.hpp"
#include "gridsched/model.hpp"

namespace gridsched::cli {

namespace {

namespace fs = std::filesystem;

std::string decimal(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void print_assignment(std::ostream& out, const Assignment& a) {
    out << "assignment";
    for (std::size_t j = 0; j < a.assignee.size(); ++j) out << ' ' << j << ':' << a.assignee[j];
    out << '\n';
}

// Shared solver flags for solve and bench.
struct SolverFlags {
    std::optional<std::size_t> np;
    std::optional<std::size_t> iters;
    std::optional<double> f;
    std::optional<double> cr;

    void attach(CLI::App* app) {
        app->add_option("--np", np, "population / swarm size");
        app->add_option("--iters", iters, "generations (MaxIter)");
        app->add_option("--f", f, "DE scaling factor F");
        app->add_option("--cr", cr, "DE crossover rate CR");
    }

    SolverSpec spec(Algorithm algorithm) const {
        SolverSpec s = SolverSpec::defaults(algorithm);
        if (np || iters) {
            s.set_budget(np.value_or(s.de.population_size), iters.value_or(s.de.max_iterations));
        }
        if (f) s.de.scaling_factor = *f;
        if (cr) s.de.crossover_rate = *cr;
        return s;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

Algorithm require_algorithm(const std::string& name) {
    const auto algo = parse_algorithm(name);
    if (!algo) throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
    return *algo;
}

int bench_threads() {
    const char* env = std::getenv("GRIDSCHED_THREADS");
    if (!env) return 0;
    int value = 0;
    const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), value);
    return (res.ec == std::errc() && value > 0) ? value : 0;
}

struct GenOptions {
    std::size_t n = 1;
    std::size_t m = 1;
    std::uint64_t seed = 0;
    double speed_lo = 1.0, speed_hi = 10.0;
    double length_lo = 10.0, length_hi = 100.0;
    bool fixtures = false;
    std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
    if (o.fixtures) {
        const fs::path dir = o.out.empty() ? fs::path("fixtures") : fs::path(o.out);
        std::error_code ec;
        fs::create_directories(dir, ec);
        const auto suite = fixture_suite();
        for (const auto& f : suite) {
            save_instance(f.instance, dir / (f.name + ".json"));
            out << "wrote " << (dir / (f.name + ".json")).string() << '\n';
        }
        std::ofstream manifest(dir / "manifest.json", std::ios::binary | std::ios::trunc);
        if (!manifest) throw MissingFile("cannot write " + (dir / "manifest.json").string());
        manifest << fixture_manifest_text(suite);
        return kOk;
    }
    GeneratorSpec spec;
    spec.resource_count = o.n;
    spec.job_count = o.m;
    spec.seed = o.seed;
    spec.speed_range = {o.speed_lo, o.speed_hi};
    spec.length_range = {o.length_lo, o.length_hi};
    const GridInstance instance = generate_instance(spec);
    if (o.out.empty()) {
        out << to_json_text(instance);
    } else {
        save_instance(instance, o.out);
    }
    return kOk;
}

struct SolveOptions {
    std::string instance;
    std::string algo = "fuzzy-de";
    std::uint64_t seed = 0;
    std::string trace;
    bool parallel = false;
    SolverFlags flags;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
    const Algorithm algorithm = require_algorithm(o.algo);
    SolverSpec spec = o.flags.spec(algorithm);
    if (o.parallel) {
        spec.de.execution = Execution::parallel;
        spec.pso.execution = Execution::parallel;
    }
    const GridInstance instance = load_instance(o.instance);
    const RunResult result = spec.run(instance, o.seed);
    out << "algorithm " << algorithm_name(algorithm) << '\n';
    out << "makespan " << decimal(result.best_makespan) << '\n';
    print_assignment(out, result.best_assignment);
    if (!o.trace.empty()) {
        std::ofstream csv(o.trace, std::ios::binary | std::ios::trunc);
        if (!csv) throw MissingFile("cannot write " + o.trace);
        const std::string stem = fs::path(o.instance).stem().string();
        csv << "algorithm,instance,generation,best_makespan\n";
        for (std::size_t g = 0; g < result.trace.size(); ++g) {
            csv << algorithm_name(algorithm) << ',' << stem << ',' << g << ','
                << decimal(result.trace[g]) << '\n';
        }
    }
    return kOk;
}

struct BenchOptions {
    bool fixtures = false;
    std::vector<std::string> instances;
    std::string algos = "ga,sa,fuzzy-pso,de,fuzzy-de";
    std::size_t runs = 100;
    std::uint64_t seed = 0;
    std::string out = "bench_out";
    bool serial = false;
    SolverFlags flags;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    struct Target {
        std::string name;
        std::string label;
        GridInstance instance;
    };
    std::vector<Target> targets;
    if (o.fixtures) {
        for (auto& f : fixture_suite()) targets.push_back({f.name, f.label, std::move(f.instance)});
    }
    for (const auto& path : o.instances) {
        const std::string stem = fs::path(path).stem().string();
        targets.push_back({stem, stem, load_instance(path)});
    }
    if (targets.empty()) throw CLI::ValidationError("bench", "needs --fixtures or --instance");

    std::vector<Algorithm> algorithms;
    for (const auto& name : split_list(o.algos)) algorithms.push_back(require_algorithm(name));
    if (algorithms.empty()) throw CLI::ValidationError("--algos", "needs at least one algorithm");
    if (o.runs < 1) throw CLI::ValidationError("--runs", "must be at least 1");

    const Execution execution = o.serial ? Execution::serial : Execution::parallel;
    const int threads = bench_threads();
    std::vector<Experiment> experiments;
    for (const auto& t : targets) {
        for (Algorithm a : algorithms) {
            experiments.push_back(
                run_experiment(t.instance, t.name, o.flags.spec(a), o.runs, o.seed, execution, threads));
        }
    }

    std::error_code ec;
    fs::create_directories(o.out, ec);
    export_csv(experiments, o.out);

    std::vector<std::string> algo_names;
    for (Algorithm a : algorithms) algo_names.emplace_back(algorithm_name(a));
    std::vector<std::string> names;
    for (const auto& t : targets) names.push_back(t.name);

    auto labelled = [&](MeanTable table) {
        for (std::size_t i = 0; i < targets.size(); ++i) table.instances[i] = targets[i].label;
        return table;
    };
    const MeanTable means = labelled(tabulate(experiments, algo_names, names, Statistic::mean));
    const MeanTable stddevs = labelled(tabulate(experiments, algo_names, names, Statistic::stddev));
    const MeanTable times = labelled(tabulate(experiments, algo_names, names, Statistic::wall_time));

    out << format_table(means, "Mean makespan over " + std::to_string(o.runs) + " runs") << '\n';
    out << format_table(times, "Mean wall time per run (s)") << '\n';
    out << format_table(stddevs, "Makespan standard deviation") << '\n';
    const bool has_baseline =
        std::find(algorithms.begin(), algorithms.end(), Algorithm::fuzzy_de) != algorithms.end();
    if (has_baseline && algorithms.size() > 1) {
        out << format_relative_table(relative_performance(means, algorithm_name(Algorithm::fuzzy_de)),
                                     "Relative performance (mean - Fuzzy DE mean)");
    }
    out << "csv " << (fs::path(o.out) / "runs.csv").string() << ' '
        << (fs::path(o.out) / "traces.csv").string() << '\n';
    return kOk;
}

struct OracleOptions {
    std::string instance;
    std::uint64_t budget = kDefaultEnumerationBudget;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
    const GridInstance instance = load_instance(o.instance);
    const OracleResult best = brute_force_optimum(instance, o.budget);
    out << "makespan " << decimal(best.makespan) << '\n';
    print_assignment(out, best.assignment);
    out << "enumerated " << best.enumerated << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grid job scheduling with fuzzy differential evolution and baselines", "gridsched"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate instance files");
    gen_cmd->add_option("-n,--resources", gen.n, "resource count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("-m,--jobs", gen.m, "job count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--speed-lo", gen.speed_lo);
    gen_cmd->add_option("--speed-hi", gen.speed_hi);
    gen_cmd->add_option("--length-lo", gen.length_lo);
    gen_cmd->add_option("--length-hi", gen.length_hi);
    gen_cmd->add_flag("--fixtures", gen.fixtures, "write the four benchmark fixtures");
    gen_cmd->add_option("--out", gen.out, "output file (directory with --fixtures)");

    SolveOptions solve_opts;
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
    solve_cmd->add_option("instance", solve_opts.instance, "instance file")->required();
    solve_cmd->add_option("--algo", solve_opts.algo, "fuzzy-de | de | ga | sa | fuzzy-pso");
    solve_cmd->add_option("--seed", solve_opts.seed, "run seed");
    solve_cmd->add_option("--trace", solve_opts.trace, "write the convergence trace as CSV");
    solve_cmd->add_flag("--parallel", solve_opts.parallel, "spread each generation over threads");
    solve_opts.flags.attach(solve_cmd);

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "repeated-run experiment");
    bench_cmd->add_flag("--fixtures", bench.fixtures, "use the four benchmark fixtures");
    bench_cmd->add_option("--instance", bench.instances, "instance file (repeatable)");
    bench_cmd->add_option("--algos", bench.algos, "comma-separated algorithms");
    bench_cmd->add_option("--runs", bench.runs, "runs per algorithm and instance");
    bench_cmd->add_option("--seed", bench.seed, "master seed; run r uses seed + r");
    bench_cmd->add_option("--out", bench.out, "directory for runs.csv and traces.csv");
    bench_cmd->add_flag("--serial", bench.serial, "run sequentially");
    bench.flags.attach(bench_cmd);

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by enumeration");
    oracle_cmd->add_option("instance", oracle.instance, "instance file")->required();
    oracle_cmd->add_option("--budget", oracle.budget, "maximum assignments to enumerate");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "gridsched: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (solve_cmd->parsed()) return cmd_solve(solve_opts, out);
        if (bench_cmd->parsed()) return cmd_bench(bench, out);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle, out);
    } catch (const CLI::ParseError& e) {
        err << "gridsched: " << e.what() << '\n';
        return kUsageError;
    } catch (const OracleInfeasible& e) {
        err << "gridsched: " << e.what() << '\n';
        return kOracleBudget;
    } catch (const ConfigError& e) {
        err << "gridsched: " << e.what() << '\n';
        return kUsageError;
    } catch (const ExperimentError& e) {
        err << "gridsched: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "gridsched: " << e.what() << '\n';
        return kIoError;
    }
    return kUsageError;
}

}  // namespace gridsched::cli
