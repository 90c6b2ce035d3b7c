#include "gridsched/model.hpp"

#include <algorithm>
#include <string>

#include <omp.h>

namespace gridsched {

namespace {

// Depth-first enumeration in lexicographic order (job 0 most significant).
// Loads are saved and restored rather than subtracted so that every leaf sees
// exactly the sums evaluate_makespan() would compute.
class Enumerator {
  public:
    explicit Enumerator(const GridInstance& instance)
        : instance_(instance),
          n_(instance.resource_count()),
          m_(instance.job_count()),
          times_(n_ * m_),
          loads_(n_),
          counts_(n_, 0),
          current_(m_, 0) {
        for (std::size_t i = 0; i < n_; ++i) {
            loads_[i] = instance.resources()[i].start_time;
            for (std::size_t j = 0; j < m_; ++j) {
                times_[j * n_ + i] = processing_time(instance.jobs()[j], instance.resources()[i]);
            }
        }
    }

    void assign(std::size_t job, std::size_t resource) {
        current_[job] = resource;
        loads_[resource] += times_[job * n_ + resource];
        ++counts_[resource];
    }

    void search(std::size_t job) {
        if (job == m_) {
            leaf();
            return;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            const double saved = loads_[i];
            current_[job] = i;
            loads_[i] = saved + times_[job * n_ + i];
            ++counts_[i];
            search(job + 1);
            --counts_[i];
            loads_[i] = saved;
        }
    }

    bool found() const { return found_; }
    double best_value() const { return best_value_; }
    const std::vector<std::size_t>& best() const { return best_; }
    std::uint64_t leaves() const { return leaves_; }

  private:
    void leaf() {
        ++leaves_;
        const auto& resources = instance_.resources();
        double makespan = loads_[0];
        for (std::size_t i = 1; i < n_; ++i) makespan = std::max(makespan, loads_[i]);
        double overshoot = 0.0;
        bool feasible = true;
        for (std::size_t i = 0; i < n_; ++i) {
            const double over = loads_[i] - resources[i].end_time;
            if (counts_[i] > 0 && over > 0.0) {
                feasible = false;
                overshoot += over;
            }
        }
        const double value = feasible ? makespan : makespan + kOvershootPenalty * overshoot;
        if (!found_ || value < best_value_) {
            found_ = true;
            best_value_ = value;
            best_ = current_;
        }
    }

    const GridInstance& instance_;
    std::size_t n_;
    std::size_t m_;
    std::vector<double> times_;  // job-major: times_[j * n + i]
    std::vector<double> loads_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
    double best_value_ = 0.0;
    bool found_ = false;
    std::uint64_t leaves_ = 0;
};

void require_budget(const GridInstance& instance, std::uint64_t budget) {
    const std::uint64_t space =
        assignment_space_size(instance.resource_count(), instance.job_count());
    if (space > budget) {
        throw OracleInfeasible(std::to_string(instance.resource_count()) + "^" +
                               std::to_string(instance.job_count()) +
                               " assignments exceed the enumeration budget of " +
                               std::to_string(budget));
    }
}

}  // namespace

std::uint64_t assignment_space_size(std::size_t n, std::size_t m) {
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (n != 0 && total > UINT64_MAX / n) return UINT64_MAX;
        total *= n;
    }
    return total;
}

OracleResult brute_force_optimum(const GridInstance& instance, std::uint64_t budget) {
    require_budget(instance, budget);
    Enumerator e(instance);
    e.search(0);
    return {Assignment{e.best()}, e.best_value(), e.leaves()};
}

OracleResult brute_force_optimum_parallel(const GridInstance& instance, std::uint64_t budget) {
    require_budget(instance, budget);
    const std::size_t n = instance.resource_count();
    const std::size_t m = instance.job_count();

    // Split on a job prefix wide enough to feed every thread several tasks.
    const std::uint64_t wanted = 8ULL * static_cast<std::uint64_t>(omp_get_max_threads());
    std::size_t depth = 0;
    std::uint64_t tasks = 1;
    while (depth < m && tasks < wanted) {
        tasks *= n;
        ++depth;
    }

    std::vector<OracleResult> partial(tasks);
    std::vector<char> found(tasks, 0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
        Enumerator e(instance);
        std::uint64_t code = static_cast<std::uint64_t>(t);
        std::vector<std::size_t> prefix(depth);
        for (std::size_t k = depth; k-- > 0;) {
            prefix[k] = code % n;
            code /= n;
        }
        for (std::size_t k = 0; k < depth; ++k) e.assign(k, prefix[k]);
        e.search(depth);
        if (e.found()) {
            found[t] = 1;
            partial[t] = {Assignment{e.best()}, e.best_value(), e.leaves()};
        }
    }

    // Tasks are in lexicographic prefix order, so the first strict minimum is
    // the lexicographically smallest optimum.
    OracleResult best;
    bool have = false;
    std::uint64_t leaves = 0;
    for (std::uint64_t t = 0; t < tasks; ++t) {
        if (!found[t]) continue;
        leaves += partial[t].enumerated;
        if (!have || partial[t].makespan < best.makespan) {
            best = partial[t];
            have = true;
        }
    }
    best.enumerated = leaves;
    return best;
}

}  // namespace gridsched
