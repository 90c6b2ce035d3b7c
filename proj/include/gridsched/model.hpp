#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gridsched/error.hpp"

namespace gridsched {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Column-sum tolerance for a valid membership matrix.
inline constexpr double kMembershipTolerance = 1e-9;

// Fitness of an infeasible schedule is makespan + kOvershootPenalty * overshoot.
inline constexpr double kOvershootPenalty = 10.0;

struct Job {
    std::size_t id = 0;
    double length = 0.0;  // cycles

    friend bool operator==(const Job&, const Job&) = default;
};

struct Resource {
    std::size_t id = 0;
    double speed = 0.0;  // cycles per unit time
    double start_time = 0.0;
    double end_time = kUnbounded;

    friend bool operator==(const Resource&, const Resource&) = default;
};

// A scheduling problem: n heterogeneous resources, m independent jobs.
//
// Construction validates every invariant (positive speeds and lengths,
// contiguous ids, consistent availability windows) so that evaluation code
// never divides by zero.
class GridInstance {
  public:
    GridInstance(std::vector<Resource> resources, std::vector<Job> jobs);

    // Convenience: resources with the given speeds (STR 0, ETR unbounded) and
    // jobs with the given lengths, ids assigned in order.
    static GridInstance from_speeds_and_lengths(std::span<const double> speeds,
                                                std::span<const double> lengths);

    const std::vector<Resource>& resources() const { return resources_; }
    const std::vector<Job>& jobs() const { return jobs_; }
    std::size_t resource_count() const { return resources_.size(); }
    std::size_t job_count() const { return jobs_.size(); }

    friend bool operator==(const GridInstance&, const GridInstance&) = default;

  private:
    std::vector<Resource> resources_;
    std::vector<Job> jobs_;
};

// Crisp schedule: assignee[j] is the resource running job j.
struct Assignment {
    std::vector<std::size_t> assignee;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// Dense row-major matrix of doubles; rows index resources, columns jobs.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Fuzzy scheduling relation: every entry in [0, 1], every column sums to 1.
// Instances can only be obtained through validated paths (repair() or
// MembershipMatrix::checked), so holding one is proof of feasibility.
class MembershipMatrix {
  public:
    // Empty 0 x 0 matrix; vacuously valid.
    MembershipMatrix() = default;

    // Throws ConfigError if `raw` violates the membership constraints.
    static MembershipMatrix checked(Matrix raw);

    // n x m matrix with every entry 1/n.
    static MembershipMatrix uniform(std::size_t n, std::size_t m);

    const Matrix& matrix() const { return values_; }
    std::size_t rows() const { return values_.rows(); }
    std::size_t cols() const { return values_.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return values_(r, c); }

    friend bool operator==(const MembershipMatrix&, const MembershipMatrix&) = default;

  private:
    explicit MembershipMatrix(Matrix m) : values_(std::move(m)) {}
    friend MembershipMatrix repair(const Matrix& raw);

    Matrix values_;
};

struct MakespanReport {
    std::vector<double> per_resource_completion;
    double makespan = 0.0;
    bool feasible = true;
    double overshoot = 0.0;  // total time past ETR over loaded resources
};

double processing_time(const Job& job, const Resource& resource);

// Completion time per resource (STR plus the summed processing times of its
// jobs, accumulated in job order), the makespan and the availability check.
MakespanReport evaluate_makespan(const GridInstance& instance, const Assignment& assignment);

// The objective every solver minimizes: makespan plus the overshoot penalty.
// Equals the makespan whenever the schedule respects all ETRs.
double fitness(const GridInstance& instance, const Assignment& assignment);

// Number of fitness() calls made on the current thread. Instrumentation for
// tests that verify every solver goes through the shared evaluation path.
std::uint64_t fitness_evaluations();

// Per-job argmax over resources; ties go to the lowest resource index.
Assignment defuzzify(const MembershipMatrix& membership);
Assignment defuzzify(const Matrix& membership);

bool check_constraints(const Matrix& raw);

// Clamp every entry to [0, 1], then scale each column to sum 1. A column whose
// clamped sum is zero becomes uniform. Throws NumericDomainError on NaN/inf.
MembershipMatrix repair(const Matrix& raw);

// In-place repair of a single column of an n-row matrix stored row-major.
void repair_column(std::span<double> values, std::size_t rows, std::size_t cols,
                   std::size_t col);

struct OracleResult {
    Assignment assignment;
    double makespan = 0.0;  // fitness of the optimum; the plain makespan when feasible
    std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

// Exhaustive search over all n^m assignments. Returns the lexicographically
// smallest assignment among those with minimal fitness. Throws
// OracleInfeasible when n^m exceeds `budget`.
OracleResult brute_force_optimum(const GridInstance& instance,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

// Same contract, enumeration split across OpenMP threads by job-prefix.
// Bit-identical result to the serial search.
OracleResult brute_force_optimum_parallel(const GridInstance& instance,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

// n^m, saturating at UINT64_MAX.
std::uint64_t assignment_space_size(std::size_t n, std::size_t m);

}  // namespace gridsched
