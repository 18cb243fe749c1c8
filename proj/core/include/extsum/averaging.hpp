#pragma once

#include <optional>

#include "extsum/point.hpp"

namespace extsum {

// Neumaier-compensated accumulator. Used for the running step-length sum,
// whose terms span several orders of magnitude under decaying schedules.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double v) noexcept;
    double value() const noexcept { return sum + compensation; }
};

// State after n steps of the iteration.
//   x    = x_n
//   sigma = sum_{k=1..n} lambda_k (weights passed to average_update)
//   xbar = weighted average of x_1..x_n; equals x_0 until the first update
//   last_u = most recent oracle selection, when a step produced this state
struct IterationState {
    long n = 0;
    Point x;
    CompensatedSum sigma;
    Point xbar;
    std::optional<Point> last_u;
};

IterationState initial_state(Point x0);

// Appends (x_next, lambda_next) to the weighted running average:
//   sigma' = sigma + lambda_next
//   xbar'  = xbar + (lambda_next/sigma') * (x_next - xbar)
// which equals (sigma*xbar + lambda_next*x_next)/sigma'. x_0 carries no
// weight: the first update sets xbar = x_1 exactly.
IterationState average_update(const IterationState& state, const Point& x_next,
                              double lambda_next);

} // namespace extsum
