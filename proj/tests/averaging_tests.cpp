#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "extsum/averaging.hpp"
#include "extsum/errors.hpp"

using namespace extsum;

TEST_CASE("compensated sum survives cancellation") {
    CompensatedSum s;
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 1.0);

    CompensatedSum tiny;
    for (int i = 0; i < 10; ++i) tiny.add(0.1);
    CHECK(tiny.value() == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("initial state carries the start point and zero weight") {
    const auto state = initial_state(Point{4.0});
    CHECK(state.n == 0);
    CHECK(state.x == Point{4.0});
    CHECK(state.xbar == Point{4.0});
    CHECK(state.sigma.value() == 0.0);
    CHECK_FALSE(state.last_u.has_value());

    CHECK_THROWS_AS(initial_state(Point(std::vector<double>{})), std::invalid_argument);
    CHECK_THROWS_AS(initial_state(Point{std::nan("")}), std::invalid_argument);
}

TEST_CASE("uniform weights give the arithmetic mean, excluding x0") {
    auto state = initial_state(Point{100.0});
    state = average_update(state, Point{0.0}, 1.0);
    // First update discards the start point entirely.
    CHECK(state.xbar == Point{0.0});
    state = average_update(state, Point{3.0}, 1.0);
    state = average_update(state, Point{6.0}, 1.0);
    CHECK(state.n == 3);
    CHECK(state.xbar[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(state.sigma.value() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("weighted average matches the closed form") {
    auto state = initial_state(Point{7.0});
    state = average_update(state, Point{0.0}, 1.0);
    state = average_update(state, Point{3.0}, 0.5);
    // (1*0 + 0.5*3) / 1.5 = 1
    CHECK(state.xbar[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("average update validates its arguments") {
    auto state = initial_state(Point{0.0, 0.0});
    CHECK_THROWS_AS(average_update(state, Point{1.0}, 1.0), DimensionMismatchError);
    CHECK_THROWS_AS(average_update(state, Point{1.0, 1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(average_update(state, Point{1.0, 1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("incremental average tracks the direct weighted sum") {
    // Running-mean form against a straight sum over 1e5 decaying weights.
    auto state = initial_state(Point{0.0});
    long double num = 0.0L;
    long double den = 0.0L;
    for (long k = 1; k <= 100000; ++k) {
        const double lambda = 1.0 / static_cast<double>(k);
        const double x = std::sin(static_cast<double>(k));
        state = average_update(state, Point{x}, lambda);
        num += static_cast<long double>(lambda) * x;
        den += lambda;
    }
    const double direct = static_cast<double>(num / den);
    CHECK(std::abs(state.xbar[0] - direct) <= 1e-10);
    CHECK(state.sigma.value() == doctest::Approx(static_cast<double>(den)).epsilon(1e-13));
}
