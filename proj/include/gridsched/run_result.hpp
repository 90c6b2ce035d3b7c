#pragma once

#include <cstddef>
#include <vector>

#include "gridsched/model.hpp"

namespace gridsched {

// Outcome of one solver run, shared by every algorithm.
//
// trace[g] is the best fitness seen after generation g (trace[0] covers the
// initial population), so it is non-increasing and ends at best_makespan.
// With the default unbounded availability windows fitness is exactly the
// makespan.
struct RunResult {
    Assignment best_assignment;
    double best_makespan = 0.0;
    std::vector<double> trace;
    double wall_time = 0.0;  // seconds
    std::size_t iterations_run = 0;
};

// Whether per-generation work is spread over OpenMP threads. Both modes give
// bit-identical results.
enum class Execution { serial, parallel };

}  // namespace gridsched
