#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace extsum {

// lambda_n = c * n^(-p), eps_n = n^(-q) for n >= 1. All parameters positive.
struct PowerSchedule {
    double c;
    double p;
    double q;
};

// Explicit positive sequences, 1-indexed (entry k-1 holds the values for
// iteration k). Validation of list schedules is heuristic by nature.
struct ListSchedule {
    std::vector<double> lambda;
    std::vector<double> eps;
};

// Step-size / tolerance schedule (lambda_n, eps_n) driving the iteration.
class StepSchedule {
public:
    static StepSchedule power(double c, double p, double q);
    static StepSchedule from_lists(std::vector<double> lambda, std::vector<double> eps);

    bool is_power() const noexcept { return std::holds_alternative<PowerSchedule>(impl_); }
    const PowerSchedule* as_power() const noexcept { return std::get_if<PowerSchedule>(&impl_); }
    const ListSchedule* as_list() const noexcept { return std::get_if<ListSchedule>(&impl_); }

    // (lambda_n, eps_n). The iteration starts from x_0, so index 0 maps to
    // the n = 1 values; there is no separate lambda_0 in the power law.
    // List schedules throw std::out_of_range past their length.
    std::pair<double, double> at(long n) const;

    // Length for list schedules, empty for power schedules.
    std::optional<std::size_t> length() const noexcept;

private:
    explicit StepSchedule(PowerSchedule s) : impl_(s) {}
    explicit StepSchedule(ListSchedule s) : impl_(std::move(s)) {}
    std::variant<PowerSchedule, ListSchedule> impl_;
};

struct ScheduleRelation {
    std::string name;
    bool holds;
    std::string detail;
};

struct ValidityReport {
    bool valid = false;
    // True when the verdict comes from finite-list extrapolation rather than
    // the analytic p-series test.
    bool heuristic = false;
    std::vector<ScheduleRelation> relations;

    // Names of the violated relations.
    std::vector<std::string> reasons() const;
};

// Checks the step-size relations required for ergodic convergence:
//   sum lambda_n = inf, sum (lambda_n/eps_n)^2 < inf,
//   sum lambda_n*eps_n < inf, eps_n decreasing to 0.
// For power schedules the p-series test is exact: valid iff
//   p <= 1 and 2(p - q) > 1 and p + q > 1 and q > 0.
ValidityReport validate_schedule(const StepSchedule& schedule);

// Relations for the classical forward-backward baseline (no enlargement):
//   sum lambda_n = inf, sum lambda_n^2 < inf  (power: 1/2 < p <= 1).
ValidityReport validate_schedule_passty(const StepSchedule& schedule);

} // namespace extsum
