#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "extsum/problems.hpp"

using namespace extsum;

namespace {

// Total objective of the split problem; +inf outside the constraint set.
double objective(const ProblemSpec& spec, const Point& x) {
    return spec.backward.eval(x) + spec.forward.eval(x);
}

} // namespace

TEST_CASE("registry lookup") {
    const auto ids = builtin_ids();
    REQUIRE(ids.size() == 4);
    CHECK(std::find(ids.begin(), ids.end(), "paper-example") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "quad-halfspace") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "abs-box") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "quad-box-2d") != ids.end());

    for (const auto& id : ids) {
        CHECK(find_builtin(id) != nullptr);
        CHECK(builtin(id).id == id);
        CHECK_FALSE(builtin(id).description.empty());
    }
    CHECK(find_builtin("no-such-problem") == nullptr);
    // The error message lists the known ids.
    try {
        builtin("no-such-problem");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("paper-example") != std::string::npos);
    }
}

TEST_CASE("stated solutions minimize the objective over a grid") {
    // Independent verification: dense evaluation of f + indicator, no
    // library optimization code involved.
    for (const char* id : {"paper-example", "quad-halfspace", "abs-box"}) {
        CAPTURE(id);
        const auto& problem = builtin(id);
        REQUIRE(problem.solution.dim() == 1);
        const double fstar = objective(problem.spec, problem.solution);
        REQUIRE(std::isfinite(fstar));

        double best = fstar;
        double best_x = problem.solution[0];
        const int m = 10000;
        for (int i = 0; i <= m; ++i) {
            const double x = -5.0 + 10.0 * i / m;
            const double v = objective(problem.spec, Point{x});
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
        CHECK(fstar <= best + 1e-6);
        CHECK(std::abs(best_x - problem.solution[0]) <= 10.0 / m + 1e-9);
    }

    const auto& q2 = builtin("quad-box-2d");
    const double fstar = objective(q2.spec, q2.solution);
    double best = fstar;
    Point best_x = q2.solution;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const Point x{i / 100.0, j / 100.0};
            const double v = objective(q2.spec, x);
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
    }
    CHECK(fstar <= best + 1e-9);
    CHECK(distance(best_x, q2.solution) <= 0.02);
}

TEST_CASE("problem metadata is consistent") {
    const auto& degenerate = builtin("paper-example");
    CHECK_FALSE(degenerate.notes.passty_applicable);
    CHECK_FALSE(degenerate.spec.h2prime_holds);
    CHECK(degenerate.notes.h2 == H2Status::verified);
    CHECK(degenerate.notes.h1_bound == 0.25);

    for (const char* id : {"quad-halfspace", "abs-box", "quad-box-2d"}) {
        CAPTURE(id);
        const auto& problem = builtin(id);
        CHECK(problem.notes.passty_applicable);
        CHECK(problem.spec.h2prime_holds);
        CHECK(problem.notes.h1_bound.has_value());
        REQUIRE(problem.spec.solution_set.has_value());
        CHECK(problem.spec.solution_set->contains(problem.solution, 1e-12));
        // The start point must be usable by the forward oracle.
        CHECK(problem.spec.forward.in_domain(problem.spec.x0));
    }

    CHECK(builtin("quad-halfspace").spec.id == "quad-halfspace");
    CHECK(builtin("quad-box-2d").solution.dim() == 2);
}
