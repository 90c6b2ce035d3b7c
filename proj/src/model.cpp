#include "gridsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gridsched {

namespace {

thread_local std::uint64_t g_fitness_calls = 0;

void require_valid(const Assignment& assignment, std::size_t n, std::size_t m) {
    if (assignment.assignee.size() != m) {
        throw MalformedAssignment("assignment has " + std::to_string(assignment.assignee.size()) +
                                  " entries, instance has " + std::to_string(m) + " jobs");
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (assignment.assignee[j] >= n) {
            throw MalformedAssignment("job " + std::to_string(j) + " assigned to resource " +
                                      std::to_string(assignment.assignee[j]) + " of " +
                                      std::to_string(n));
        }
    }
}

}  // namespace

GridInstance::GridInstance(std::vector<Resource> resources, std::vector<Job> jobs)
    : resources_(std::move(resources)), jobs_(std::move(jobs)) {
    if (resources_.empty()) throw ConfigError("instance needs at least one resource");
    if (jobs_.empty()) throw ConfigError("instance needs at least one job");
    for (std::size_t i = 0; i < resources_.size(); ++i) {
        const Resource& r = resources_[i];
        if (r.id != i) throw ConfigError("resource ids must be contiguous from 0");
        if (!std::isfinite(r.speed) || r.speed <= 0.0) {
            throw ConfigError("resource " + std::to_string(i) + " has non-positive speed");
        }
        if (!std::isfinite(r.start_time) || r.start_time < 0.0) {
            throw ConfigError("resource " + std::to_string(i) + " has invalid start time");
        }
        if (std::isnan(r.end_time) || r.end_time <= r.start_time) {
            throw ConfigError("resource " + std::to_string(i) + " ends before it starts");
        }
    }
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
        if (jobs_[j].id != j) throw ConfigError("job ids must be contiguous from 0");
        if (!std::isfinite(jobs_[j].length) || jobs_[j].length <= 0.0) {
            throw ConfigError("job " + std::to_string(j) + " has non-positive length");
        }
    }
}

GridInstance GridInstance::from_speeds_and_lengths(std::span<const double> speeds,
                                                   std::span<const double> lengths) {
    std::vector<Resource> resources;
    resources.reserve(speeds.size());
    for (std::size_t i = 0; i < speeds.size(); ++i) resources.push_back({i, speeds[i]});
    std::vector<Job> jobs;
    jobs.reserve(lengths.size());
    for (std::size_t j = 0; j < lengths.size(); ++j) jobs.push_back({j, lengths[j]});
    return GridInstance(std::move(resources), std::move(jobs));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw ConfigError("matrix data does not match its shape");
}

MembershipMatrix MembershipMatrix::checked(Matrix raw) {
    if (!check_constraints(raw)) throw ConfigError("matrix violates membership constraints");
    return MembershipMatrix(std::move(raw));
}

MembershipMatrix MembershipMatrix::uniform(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw ConfigError("membership matrix needs n, m >= 1");
    return MembershipMatrix(Matrix(n, m, 1.0 / static_cast<double>(n)));
}

double processing_time(const Job& job, const Resource& resource) {
    return job.length / resource.speed;
}

MakespanReport evaluate_makespan(const GridInstance& instance, const Assignment& assignment) {
    const auto& resources = instance.resources();
    const auto& jobs = instance.jobs();
    require_valid(assignment, resources.size(), jobs.size());

    MakespanReport report;
    report.per_resource_completion.resize(resources.size());
    std::vector<bool> loaded(resources.size(), false);
    for (std::size_t i = 0; i < resources.size(); ++i) {
        report.per_resource_completion[i] = resources[i].start_time;
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const std::size_t i = assignment.assignee[j];
        report.per_resource_completion[i] += processing_time(jobs[j], resources[i]);
        loaded[i] = true;
    }
    report.makespan = *std::max_element(report.per_resource_completion.begin(),
                                        report.per_resource_completion.end());
    for (std::size_t i = 0; i < resources.size(); ++i) {
        const double over = report.per_resource_completion[i] - resources[i].end_time;
        if (loaded[i] && over > 0.0) {
            report.feasible = false;
            report.overshoot += over;
        }
    }
    return report;
}

double fitness(const GridInstance& instance, const Assignment& assignment) {
    ++g_fitness_calls;
    const MakespanReport report = evaluate_makespan(instance, assignment);
    return report.feasible ? report.makespan
                           : report.makespan + kOvershootPenalty * report.overshoot;
}

std::uint64_t fitness_evaluations() { return g_fitness_calls; }

Assignment defuzzify(const Matrix& membership) {
    Assignment out;
    out.assignee.resize(membership.cols());
    for (std::size_t j = 0; j < membership.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < membership.rows(); ++i) {
            if (membership(i, j) > membership(best, j)) best = i;
        }
        out.assignee[j] = best;
    }
    return out;
}

Assignment defuzzify(const MembershipMatrix& membership) { return defuzzify(membership.matrix()); }

bool check_constraints(const Matrix& raw) {
    for (std::size_t j = 0; j < raw.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < raw.rows(); ++i) {
            const double v = raw(i, j);
            if (!(v >= 0.0 && v <= 1.0)) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > kMembershipTolerance) return false;
    }
    return true;
}

void repair_column(std::span<double> values, std::size_t rows, std::size_t cols,
                   std::size_t col) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double& v = values[i * cols + col];
        if (!std::isfinite(v)) throw NumericDomainError("non-finite membership value");
        v = std::clamp(v, 0.0, 1.0);
        sum += v;
    }
    if (sum == 0.0) {
        const double u = 1.0 / static_cast<double>(rows);
        for (std::size_t i = 0; i < rows; ++i) values[i * cols + col] = u;
        return;
    }
    if (sum == 1.0) return;
    for (std::size_t i = 0; i < rows; ++i) values[i * cols + col] /= sum;
}

MembershipMatrix repair(const Matrix& raw) {
    Matrix out = raw;
    for (std::size_t j = 0; j < out.cols(); ++j) repair_column(out.values(), out.rows(), out.cols(), j);
    return MembershipMatrix(std::move(out));
}

}  // namespace gridsched
