#include "extsum/averaging.hpp"

#include <cmath>
#include <stdexcept>

#include "extsum/errors.hpp"

namespace extsum {

void CompensatedSum::add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
        compensation += (sum - t) + v;
    } else {
        compensation += (v - t) + sum;
    }
    sum = t;
}

IterationState initial_state(Point x0) {
    if (x0.dim() == 0) throw std::invalid_argument("x0 must have dimension >= 1");
    if (!x0.all_finite()) throw std::invalid_argument("x0 must be finite");
    IterationState s;
    s.n = 0;
    s.x = x0;
    s.xbar = std::move(x0);
    return s;
}

IterationState average_update(const IterationState& state, const Point& x_next,
                              double lambda_next) {
    if (!(lambda_next > 0.0) || !std::isfinite(lambda_next)) {
        throw std::invalid_argument("lambda_next must be positive and finite");
    }
    if (x_next.dim() != state.x.dim()) {
        throw DimensionMismatchError("x_next dimension " + std::to_string(x_next.dim()) +
                                     " does not match state dimension " +
                                     std::to_string(state.x.dim()));
    }
    IterationState next = state;
    next.n = state.n + 1;
    next.x = x_next;
    next.sigma.add(lambda_next);
    if (state.n == 0) {
        next.xbar = x_next; // first weighted term: xbar_1 = x_1 exactly
    } else {
        const double w = lambda_next / next.sigma.value();
        next.xbar = state.xbar + w * (x_next - state.xbar);
    }
    return next;
}

} // namespace extsum
