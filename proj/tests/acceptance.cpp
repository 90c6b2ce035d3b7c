// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gridsched/bench.hpp"
#include "gridsched/datasets.hpp"
#include "gridsched/fuzzy_de.hpp"

namespace {

using namespace gridsched;
namespace fs = std::filesystem;

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// 1. Relative-performance arithmetic over the published mean makespans.
Verdict table_four_arithmetic() {
    const MeanTable means{
        {"GA", "SA", "Fuzzy PSO", "DE", "Fuzzy DE"},
        {"(3,13)", "(5,100)", "(8,60)", "(10,50)"},
        {{47.1167, 85.7431, 42.9270, 38.0428},
         {46.6000, 90.7338, 55.4594, 41.7889},
         {46.2667, 84.0544, 41.9489, 37.6668},
         {46.0500, 86.0138, 43.0413, 37.5748},
         {46.0166, 85.5431, 41.7580, 36.0588}}};
    const double published[4][4] = {{1.10003, 0.19994, 1.16895, 1.98692},
                                    {0.58333, 5.19064, 13.70135, 5.73302},
                                    {0.25003, -1.48876, 0.19085, 1.61092},
                                    {0.03333, 0.47064, 1.28325, 1.51892}};
    const double averages[4] = {1.11396, 6.302085, 0.14076, 0.826535};
    const auto rel = relative_performance(means, "Fuzzy DE");
    double worst_cell = 0.0, worst_avg = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int i = 0; i < 4; ++i) {
            worst_cell = std::max(worst_cell, std::abs(rel.delta[a][i] - published[a][i]));
        }
        worst_avg = std::max(worst_avg, std::abs(rel.average[a] - averages[a]));
    }
    Verdict v;
    v.pass = worst_cell <= 5e-3 && worst_avg <= 1e-3;
    v.detail = "max cell error " + std::to_string(worst_cell) + " (tol 5e-3), max average error " +
               std::to_string(worst_avg) + " (tol 1e-3)";
    return v;
}

// 2. mutate -> crossover -> repair always yields a valid membership matrix.
Verdict constraint_preservation() {
    GeneratorSpec spec;
    spec.resource_count = 8;
    spec.job_count = 60;
    spec.seed = 860;
    const auto inst = generate_instance(spec);
    SolverConfig config;
    config.population_size = 20;
    config.seed = 2;
    auto pop = init_population(inst, config);
    Rng rng(4242);
    int failures = 0;
    for (int cycle = 0; cycle < 1000; ++cycle) {
        const std::size_t k = rng.index(pop.size());
        const double f = rng.uniform(0.01, 2.0);
        const double cr = rng.uniform01();
        const Matrix mutant = mutate(pop, k, f, rng);
        const auto repaired = repair(crossover(pop[k].genome, mutant, cr, rng));
        const Matrix& m = repaired.matrix();
        bool ok = check_constraints(m);
        for (std::size_t j = 0; j < m.cols() && ok; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                ok = ok && m(i, j) >= 0.0 && m(i, j) <= 1.0;
                sum += m(i, j);
            }
            ok = ok && std::abs(sum - 1.0) <= 1e-9;
        }
        if (!ok) ++failures;
        pop[k] = Individual{repaired, fitness_of(inst, repaired)};
    }
    return {failures == 0, std::to_string(failures) + " invalid outputs in 1000 cycles"};
}

// 3. Solvers versus the exhaustive optimum on small instances.
Verdict oracle_equivalence() {
    struct Rule {
        Algorithm algorithm;
        double factor;
        int required;
    };
    const Rule rules[] = {{Algorithm::fuzzy_de, 1.05, 90},
                          {Algorithm::de, 1.05, 90},
                          {Algorithm::ga, 1.05, 90},
                          {Algorithm::sa, 1.10, 80}};
    Verdict v;
    std::map<Algorithm, int> worst;
    double slowest = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        GeneratorSpec spec;
        spec.resource_count = 3;
        spec.job_count = 5 + s % 6;  // m in [5, 10]
        spec.seed = 9000 + s;
        const auto inst = generate_instance(spec);
        const double optimum = brute_force_optimum(inst).makespan;
        for (const Rule& rule : rules) {
            SolverSpec solver = SolverSpec::defaults(rule.algorithm);
            solver.set_budget(30, 300);
            const auto e = run_experiment(inst, "oracle", solver, 100, 1000 * s, Execution::parallel);
            int hits = 0;
            for (const auto& run : e.runs) {
                if (run.best_makespan <= rule.factor * optimum) ++hits;
                slowest = std::max(slowest, run.wall_time);
            }
            auto it = worst.find(rule.algorithm);
            if (it == worst.end() || hits < it->second) worst[rule.algorithm] = hits;
            if (hits < rule.required) v.pass = false;
        }
    }
    if (slowest >= 10.0) v.pass = false;
    std::ostringstream os;
    os << "worst hits over 20 instances:";
    for (const Rule& rule : rules) {
        os << ' ' << algorithm_name(rule.algorithm) << '=' << worst[rule.algorithm] << "/100 (need "
           << rule.required << ')';
    }
    os << "; slowest run " << slowest << " s";
    v.detail = os.str();
    return v;
}

// 4. Best-so-far traces never increase.
Verdict monotone_convergence() {
    Rng rng(77);
    int violations = 0;
    int checked = 0;
    for (Algorithm a : kAllAlgorithms) {
        for (int pair = 0; pair < 50; ++pair) {
            GeneratorSpec spec;
            spec.resource_count = 1 + rng.index(10);
            spec.job_count = 1 + rng.index(60);
            spec.seed = rng.next();
            const auto inst = generate_instance(spec);
            SolverSpec solver = SolverSpec::defaults(a);
            solver.set_budget(20, 60);
            const auto r = solver.run(inst, rng.next());
            ++checked;
            for (std::size_t g = 1; g < r.trace.size(); ++g) {
                if (r.trace[g] > r.trace[g - 1]) {
                    ++violations;
                    break;
                }
            }
            if (r.trace.empty() || r.trace.back() != r.best_makespan) ++violations;
        }
    }
    return {violations == 0,
            std::to_string(violations) + " violations in " + std::to_string(checked) + " runs"};
}

// 5. Reruns and serial/parallel execution agree bit for bit.
Verdict determinism() {
    const auto suite = fixture_suite();
    int mismatches = 0;
    for (Algorithm a : kAllAlgorithms) {
        SolverSpec solver = SolverSpec::defaults(a);
        solver.set_budget(20, 50);
        for (const auto& f : suite) {
            const auto one = solver.run(f.instance, 11);
            const auto two = solver.run(f.instance, 11);
            if (one.best_makespan != two.best_makespan || one.best_assignment != two.best_assignment ||
                one.trace != two.trace) {
                ++mismatches;
            }
            SolverSpec threaded = solver;
            threaded.de.execution = Execution::parallel;
            threaded.pso.execution = Execution::parallel;
            const auto three = threaded.run(f.instance, 11);
            if (one.trace != three.trace || one.best_assignment != three.best_assignment) ++mismatches;

            const auto serial = run_experiment(f.instance, f.name, solver, 4, 3, Execution::serial);
            const auto parallel = run_experiment(f.instance, f.name, solver, 4, 3, Execution::parallel);
            for (std::size_t r = 0; r < serial.runs.size(); ++r) {
                if (serial.runs[r].best_makespan != parallel.runs[r].best_makespan ||
                    serial.runs[r].best_assignment != parallel.runs[r].best_assignment ||
                    serial.runs[r].trace != parallel.runs[r].trace) {
                    ++mismatches;
                }
            }
            if (serial.summary.mean_makespan != parallel.summary.mean_makespan ||
                serial.summary.stddev_makespan != parallel.summary.stddev_makespan) {
                ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches across 5 solvers x 4 fixtures"};
}

// 6. Full protocol through the CLI, then the ordering check fuzzy DE vs SA.
Verdict protocol_shape() {
    const fs::path out = fs::temp_directory_path() / "gridsched_acceptance_bench";
    fs::remove_all(out);
    std::ostringstream stdout_text, stderr_text;
    const int code = cli::run({"bench", "--fixtures", "--runs", "100", "--out", out.string()},
                              stdout_text, stderr_text);
    Verdict v;
    if (code != 0) return {false, "bench exited " + std::to_string(code) + ": " + stderr_text.str()};
    const std::string text = stdout_text.str();
    std::printf("%s", text.c_str());
    for (const char* needle : {"Mean makespan", "standard deviation", "Relative performance", "GA",
                               "SA", "Fuzzy PSO", "DE", "Fuzzy DE", "(3,13)", "(5,100)", "(8,60)",
                               "(10,50)", "Average"}) {
        if (text.find(needle) == std::string::npos) {
            v.pass = false;
            v.detail += std::string("missing '") + needle + "'; ";
        }
    }

    std::map<std::string, std::map<std::string, std::vector<double>>> makespans;
    std::istringstream runs(slurp(out / "runs.csv"));
    std::string line;
    std::getline(runs, line);
    std::size_t rows = 0;
    while (std::getline(runs, line)) {
        std::istringstream cells(line);
        std::string run_id, algo, inst, ms;
        std::getline(cells, run_id, ',');
        std::getline(cells, algo, ',');
        std::getline(cells, inst, ',');
        std::getline(cells, ms, ',');
        makespans[inst][algo].push_back(std::stod(ms));
        ++rows;
    }
    if (rows != 5 * 4 * 100) {
        v.pass = false;
        v.detail += "runs.csv has " + std::to_string(rows) + " rows; ";
    }
    std::ostringstream os;
    for (const auto& f : fixture_suite()) {
        const double fde = median(makespans[f.name]["fuzzy-de"]);
        const double sa = median(makespans[f.name]["sa"]);
        os << f.label << " median fuzzy-de " << fde << " vs sa " << sa << "; ";
        if (!(fde <= sa)) v.pass = false;
    }
    v.detail += os.str();
    fs::remove_all(out);
    return v;
}

// 7. Persistence round trip and byte-stable fixtures.
Verdict round_trip_and_fixtures() {
    const fs::path committed = GRIDSCHED_FIXTURE_DIR;
    const fs::path scratch = fs::temp_directory_path() / "gridsched_acceptance_fixtures";
    fs::remove_all(scratch);
    std::ostringstream sink;
    if (cli::run({"gen", "--fixtures", "--out", scratch.string()}, sink, sink) != 0) {
        return {false, "gen --fixtures failed"};
    }
    int problems = 0;
    for (const auto& f : fixture_suite()) {
        const fs::path file = f.name + ".json";
        if (slurp(scratch / file) != slurp(committed / file)) ++problems;
        save_instance(f.instance, scratch / "copy.json");
        if (!(load_instance(scratch / "copy.json") == f.instance)) ++problems;
        if (!(load_instance(committed / file) == f.instance)) ++problems;
    }
    if (slurp(scratch / "manifest.json") != slurp(committed / "manifest.json")) ++problems;
    fs::remove_all(scratch);
    return {problems == 0, std::to_string(problems) + " round-trip or regeneration mismatches"};
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number, e.g. `acceptance 3 6`.
    const std::vector<std::string> only(argv + 1, argv + argc);
    struct Criterion {
        const char* name;
        std::function<Verdict()> check;
    };
    const Criterion criteria[] = {
        {"1 relative-performance arithmetic", table_four_arithmetic},
        {"2 constraint preservation", constraint_preservation},
        {"3 oracle equivalence", oracle_equivalence},
        {"4 monotone convergence", monotone_convergence},
        {"5 determinism", determinism},
        {"6 protocol shape", protocol_shape},
        {"7 round trip and fixture stability", round_trip_and_fixtures},
    };
    int failed = 0;
    int ran = 0;
    for (const auto& c : criteria) {
        const std::string number(c.name, std::strchr(c.name, ' '));
        if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.name,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        if (!v.pass) ++failed;
    }
    std::printf("%d of %d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
