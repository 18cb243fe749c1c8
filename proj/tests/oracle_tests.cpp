#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "extsum/errors.hpp"
#include "extsum/oracles.hpp"

using namespace extsum;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> grid_1d(double lo, double hi, int m) {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        out.push_back(Point{lo + (hi - lo) * i / (m - 1)});
    }
    return out;
}

// Nonnegative probes for functions whose domain is a half line, with
// log-spaced coverage across nine decades.
std::vector<Point> nonneg_probes() {
    std::vector<Point> out{Point{0.0}};
    for (int k = -6; k <= 4; ++k) {
        const double base = std::pow(10.0, k);
        out.push_back(Point{base});
        out.push_back(Point{2.5 * base});
        out.push_back(Point{5.0 * base});
    }
    return out;
}

} // namespace

TEST_CASE("projection onto the supported sets") {
    const auto box = ConvexSet::box(Point{1.0, 0.0}, Point{2.0, 1.0});
    CHECK(box.project(Point{5.0, 0.5}) == Point{2.0, 0.5});
    CHECK(box.project(Point{1.5, -3.0}) == Point{1.5, 0.0});
    CHECK(box.contains(Point{1.0, 1.0}));
    CHECK_FALSE(box.contains(Point{0.99, 0.5}));

    const auto half = ConvexSet::halfspace(Point{1.0, 0.0}, 1.0);
    CHECK(half.project(Point{3.0, 2.0}) == Point{1.0, 2.0});
    CHECK(half.project(Point{0.0, 7.0}) == Point{0.0, 7.0});

    const auto single = ConvexSet::singleton(Point{2.0, -1.0});
    CHECK(single.project(Point{100.0, 100.0}) == Point{2.0, -1.0});

    const auto ball = ConvexSet::ball(Point{0.0, 0.0}, 1.0);
    CHECK(ball.project(Point{2.0, 0.0}) == Point{1.0, 0.0});
    CHECK(ball.project(Point{0.3, 0.0}) == Point{0.3, 0.0});
}

TEST_CASE("projections are idempotent and nonexpansive") {
    const std::vector<ConvexSet> sets{
        ConvexSet::box(Point{-1.0, -1.0}, Point{1.0, 2.0}),
        ConvexSet::halfspace(Point{1.0, 2.0}, 3.0),
        ConvexSet::ball(Point{0.5, 0.5}, 2.0),
        ConvexSet::singleton(Point{0.0, 0.0}),
    };
    std::uint64_t seed = 7;
    auto draw = [&seed] {
        seed = derive_seed(seed, 1);
        return static_cast<double>(seed % 2000) / 100.0 - 10.0;
    };
    for (const auto& set : sets) {
        for (int i = 0; i < 50; ++i) {
            const Point z{draw(), draw()};
            const Point w{draw(), draw()};
            const Point pz = set.project(z);
            const Point pw = set.project(w);
            CHECK(distance(set.project(pz), pz) <= 1e-12);
            CHECK(distance(pz, pw) <= distance(z, w) + 1e-12);
        }
    }
}

TEST_CASE("neg_sqrt selections at the origin") {
    const auto f = ConvexFunctionOracle::neg_sqrt();
    const Point origin{0.0};
    // The eps-set is the ray (-inf, -1/(4*eps)]; every strategy lands on the
    // endpoint, the only distinguished element.
    CHECK(eps_subgradient(f, origin, 0.25, SelectionStrategy::min_norm()) == Point{-1.0});
    CHECK(eps_subgradient(f, origin, 0.25, SelectionStrategy::boundary()) == Point{-1.0});
    CHECK(eps_subgradient(f, origin, 0.25, SelectionStrategy::random(99)) == Point{-1.0});

    CHECK_THROWS_AS(eps_subgradient(f, origin, 0.0, SelectionStrategy::min_norm()),
                    EmptySubdifferentialError);
    CHECK_THROWS_AS(eps_subgradient(f, Point{-1.0}, 0.5, SelectionStrategy::min_norm()),
                    DomainError);
}

TEST_CASE("neg_sqrt selections on the interior") {
    const auto f = ConvexFunctionOracle::neg_sqrt();
    const Point x{4.0};
    const double eps = 1.0;

    const Point exact = eps_subgradient(f, x, eps, SelectionStrategy::min_norm());
    CHECK(exact == Point{-0.25});

    // Upper root of 4u^2 + 3u + 1/4 = 0.
    const Point upper = eps_subgradient(f, x, eps, SelectionStrategy::boundary());
    CHECK(upper[0] == doctest::Approx((-3.0 + std::sqrt(5.0)) / 8.0).epsilon(1e-14));

    auto probes = nonneg_probes();
    CHECK(check_eps_subgradient(f, x, exact, eps, probes));
    CHECK(check_eps_subgradient(f, x, upper, eps, probes));

    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point u = eps_subgradient(f, x, eps, SelectionStrategy::random(s));
        CHECK(u[0] >= exact[0]);
        CHECK(u[0] <= upper[0] + 1e-15);
        CHECK(check_eps_subgradient(f, x, u, eps, probes));
    }

    // Just past the upper root the defining inequality fails near its
    // tangency point y = 1/(4 u^2).
    const double bad = upper[0] + 0.02;
    probes.push_back(Point{1.0 / (4.0 * bad * bad)});
    CHECK_FALSE(check_eps_subgradient(f, x, Point{bad}, eps, probes));
}

TEST_CASE("neg_sqrt boundary selection is stable for tiny eps") {
    const auto f = ConvexFunctionOracle::neg_sqrt();
    const Point x{4.0};
    // As eps -> 0 the interval collapses onto the exact gradient; the stable
    // root formula must not cancel.
    const Point u = eps_subgradient(f, x, 1e-14, SelectionStrategy::boundary());
    CHECK(u[0] == doctest::Approx(-0.25).epsilon(1e-7));
    CHECK(std::isfinite(u[0]));
}

TEST_CASE("quadratic selections") {
    const auto f = ConvexFunctionOracle::quadratic(Point{0.0});
    const Point x{3.0};
    CHECK(eps_subgradient(f, x, 2.0, SelectionStrategy::min_norm()) == Point{3.0});
    CHECK(eps_subgradient(f, x, 2.0, SelectionStrategy::boundary()) == Point{5.0});

    auto probes = grid_1d(-10.0, 10.0, 201);
    probes.push_back(Point{5.0}); // tangency of the boundary selection
    CHECK(check_eps_subgradient(f, x, Point{5.0}, 2.0, probes));
    probes.push_back(Point{5.1});
    CHECK_FALSE(check_eps_subgradient(f, x, Point{5.1}, 2.0, probes));

    const auto f2 = ConvexFunctionOracle::quadratic(Point{2.0, 3.0});
    const Point x2{0.0, 0.0};
    const Point grad = eps_subgradient(f2, x2, 0.0, SelectionStrategy::min_norm());
    CHECK(grad == Point{-2.0, -3.0});
    const Point b2 = eps_subgradient(f2, x2, 2.0, SelectionStrategy::boundary());
    const double scale = 1.0 + 2.0 / std::sqrt(13.0);
    CHECK(b2[0] == doctest::Approx(-2.0 * scale).epsilon(1e-14));
    CHECK(b2[1] == doctest::Approx(-3.0 * scale).epsilon(1e-14));

    std::vector<Point> probes2;
    for (int i = -6; i <= 6; ++i) {
        for (int j = -6; j <= 6; ++j) {
            probes2.push_back(Point{static_cast<double>(i), static_cast<double>(j)});
        }
    }
    probes2.push_back(Point{2.0 + b2[0], 3.0 + b2[1]}); // tight probe y = a + u
    CHECK(check_eps_subgradient(f2, x2, b2, 2.0, probes2));
    CHECK(check_eps_subgradient(f2, x2, grad, 0.0, probes2));
}

TEST_CASE("abs selections") {
    const auto f = ConvexFunctionOracle::abs();
    CHECK(eps_subgradient(f, Point{2.0}, 0.1, SelectionStrategy::min_norm()) == Point{1.0});
    CHECK(eps_subgradient(f, Point{2.0}, 0.1, SelectionStrategy::boundary()) == Point{0.95});
    CHECK(eps_subgradient(f, Point{-2.0}, 0.1, SelectionStrategy::boundary()) ==
          Point{-0.95});
    // Large eps saturates the interval at the opposite slope.
    CHECK(eps_subgradient(f, Point{2.0}, 100.0, SelectionStrategy::boundary()) ==
          Point{-1.0});
    CHECK(eps_subgradient(f, Point{0.0}, 0.5, SelectionStrategy::min_norm()) == Point{0.0});
    CHECK(eps_subgradient(f, Point{0.0}, 0.5, SelectionStrategy::boundary()) == Point{1.0});

    const auto probes = grid_1d(-10.0, 10.0, 401);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point u = eps_subgradient(f, Point{2.0}, 0.1, SelectionStrategy::random(s));
        CHECK(u[0] >= 0.95 - 1e-15);
        CHECK(u[0] <= 1.0);
        CHECK(check_eps_subgradient(f, Point{2.0}, u, 0.1, probes));
    }

    // u = 1.5 overshoots every admissible slope; y = 10 exposes it.
    const std::vector<Point> far{Point{10.0}};
    CHECK_FALSE(check_eps_subgradient(f, Point{0.0}, Point{1.5}, 0.1, far));

    CHECK(eps_subgradient(f, Point{3.0, -2.0, 0.0}, 0.5, SelectionStrategy::min_norm()) ==
          Point{1.0, -1.0, 0.0});
    CHECK_THROWS_AS(
        eps_subgradient(f, Point{3.0, -2.0}, 0.5, SelectionStrategy::boundary()),
        UnsupportedOracleError);
}

TEST_CASE("indicator selections") {
    const auto single =
        ConvexFunctionOracle::indicator(ConvexSet::singleton(Point{0.0}));
    CHECK(eps_subgradient(single, Point{0.0}, 0.25, SelectionStrategy::boundary()) ==
          Point{0.0});
    // Over a singleton every u satisfies the inequality.
    const std::vector<Point> only{Point{0.0}};
    CHECK(check_eps_subgradient(single, Point{0.0}, Point{123.0}, 0.01, only));
    CHECK_THROWS_AS(
        eps_subgradient(single, Point{1.0}, 0.25, SelectionStrategy::min_norm()),
        DomainError);

    const auto box = ConvexFunctionOracle::indicator(ConvexSet::box(Point{1.0}, Point{2.0}));
    CHECK(eps_subgradient(box, Point{1.5}, 0.25, SelectionStrategy::min_norm()) ==
          Point{0.0});
    CHECK(eps_subgradient(box, Point{1.5}, 0.25, SelectionStrategy::boundary()) ==
          Point{0.5});
    // At the upper bound the outward side is unbounded; the selection probes
    // the other end.
    CHECK(eps_subgradient(box, Point{2.0}, 0.25, SelectionStrategy::boundary()) ==
          Point{-0.25});
    const auto box_probes = grid_1d(1.0, 2.0, 101);
    CHECK(check_eps_subgradient(box, Point{1.5}, Point{0.5}, 0.25, box_probes));
    CHECK(check_eps_subgradient(box, Point{2.0}, Point{-0.25}, 0.25, box_probes));
    CHECK_FALSE(check_eps_subgradient(box, Point{1.5}, Point{0.6}, 0.25, box_probes));

    const auto half = ConvexFunctionOracle::indicator(
        ConvexSet::halfspace(Point{1.0, 0.0}, 1.0));
    CHECK(eps_subgradient(half, Point{0.0, 0.0}, 0.5, SelectionStrategy::min_norm()) ==
          Point{0.0, 0.0});
    CHECK(eps_subgradient(half, Point{0.0, 0.0}, 0.5, SelectionStrategy::boundary()) ==
          Point{0.5, 0.0});
    // On the boundary the slack vanishes and the whole normal ray qualifies.
    CHECK(eps_subgradient(half, Point{1.0, 2.0}, 0.5, SelectionStrategy::boundary()) ==
          Point{1.0, 0.0});

    std::vector<Point> half_probes;
    for (int i = -5; i <= 1; ++i) {
        for (int j = -3; j <= 3; ++j) {
            half_probes.push_back(Point{static_cast<double>(i), static_cast<double>(j)});
        }
    }
    CHECK(check_eps_subgradient(half, Point{0.0, 0.0}, Point{0.5, 0.0}, 0.5, half_probes));
    CHECK(check_eps_subgradient(half, Point{1.0, 2.0}, Point{1.0, 0.0}, 0.5, half_probes));
    CHECK_FALSE(
        check_eps_subgradient(half, Point{0.0, 0.0}, Point{0.7, 0.0}, 0.5, half_probes));

    const auto ball = ConvexFunctionOracle::indicator(ConvexSet::ball(Point{0.0}, 1.0));
    CHECK_THROWS_AS(eps_subgradient(ball, Point{0.0}, 0.5, SelectionStrategy::min_norm()),
                    UnsupportedOracleError);
}

TEST_CASE("linear selections ignore the strategy") {
    const auto f = ConvexFunctionOracle::linear(Point{2.0, -1.0});
    const Point x{5.0, 5.0};
    CHECK(eps_subgradient(f, x, 0.0, SelectionStrategy::min_norm()) == Point{2.0, -1.0});
    CHECK(eps_subgradient(f, x, 3.0, SelectionStrategy::boundary()) == Point{2.0, -1.0});
    CHECK(eps_subgradient(f, x, 3.0, SelectionStrategy::random(5)) == Point{2.0, -1.0});
}

TEST_CASE("selection argument validation") {
    const auto f = ConvexFunctionOracle::quadratic(Point{0.0});
    CHECK_THROWS_AS(eps_subgradient(f, Point{1.0}, -0.5, SelectionStrategy::min_norm()),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        eps_subgradient(f, Point{std::nan("")}, 0.5, SelectionStrategy::min_norm()),
        std::invalid_argument);
    CHECK_THROWS_AS(eps_subgradient(f, Point{1.0, 2.0}, 0.5, SelectionStrategy::min_norm()),
                    DimensionMismatchError);
    CHECK_THROWS_AS(
        check_eps_subgradient(f, Point{1.0}, Point{1.0}, 0.5, std::vector<Point>{}),
        std::invalid_argument);
}

TEST_CASE("random selections are pure functions of the seed") {
    const auto f = ConvexFunctionOracle::quadratic(Point{0.0});
    const Point x{3.0};
    const Point a = eps_subgradient(f, x, 2.0, SelectionStrategy::random(42));
    const Point b = eps_subgradient(f, x, 2.0, SelectionStrategy::random(42));
    CHECK(bit_equal(a, b));
    const Point c = eps_subgradient(f, x, 2.0, SelectionStrategy::random(43));
    CHECK_FALSE(bit_equal(a, c));

    CHECK(derive_seed(0, 1) == derive_seed(0, 1));
    CHECK(derive_seed(0, 1) != derive_seed(0, 2));
    CHECK(derive_seed(0, 1) != derive_seed(1, 1));
}

TEST_CASE("resolvent closed forms") {
    const auto quad = ConvexFunctionOracle::quadratic(Point{0.0});
    CHECK(resolvent(quad, 1.0, Point{4.0}) == Point{2.0});
    const auto quad1 = ConvexFunctionOracle::quadratic(Point{1.0});
    CHECK(resolvent(quad1, 3.0, Point{5.0}) == Point{2.0});

    const auto abs = ConvexFunctionOracle::abs();
    CHECK(resolvent(abs, 0.5, Point{0.2}) == Point{0.0});
    CHECK(resolvent(abs, 0.5, Point{2.0}) == Point{1.5});
    CHECK(resolvent(abs, 0.5, Point{-2.0}) == Point{-1.5});

    const auto box = ConvexFunctionOracle::indicator(ConvexSet::box(Point{1.0}, Point{2.0}));
    CHECK(resolvent(box, 7.0, Point{5.0}) == Point{2.0});

    const auto lin = ConvexFunctionOracle::linear(Point{2.0});
    CHECK(resolvent(lin, 0.25, Point{1.0}) == Point{0.5});

    const auto ns = ConvexFunctionOracle::neg_sqrt();
    CHECK_THROWS_AS(resolvent(ns, 1.0, Point{1.0}), UnsupportedResolventError);
    CHECK_FALSE(has_resolvent(ns));
    CHECK(has_resolvent(quad));
    CHECK_THROWS_AS(resolvent(quad, 0.0, Point{1.0}), std::invalid_argument);
}

TEST_CASE("resolvent outputs satisfy the optimality inclusion") {
    // p = resolvent(f, lambda, z) iff (z - p)/lambda is an exact subgradient
    // of f at p.
    const std::vector<ConvexFunctionOracle> oracles{
        ConvexFunctionOracle::quadratic(Point{1.5}),
        ConvexFunctionOracle::abs(),
        ConvexFunctionOracle::indicator(ConvexSet::box(Point{-1.0}, Point{1.0})),
        ConvexFunctionOracle::linear(Point{0.7}),
    };
    const auto probes = grid_1d(-6.0, 6.0, 241);
    for (const auto& f : oracles) {
        for (int i = 0; i < 40; ++i) {
            const double z = -4.0 + 8.0 * i / 39.0;
            const double lambda = 0.1 + 0.15 * i;
            const Point p = resolvent(f, lambda, Point{z});
            const Point u{(z - p[0]) / lambda};
            CHECK(check_eps_subgradient(f, p, u, 0.0, probes, 1e-9));
        }
    }
}

TEST_CASE("exact subdifferential boxes") {
    const auto ns = ConvexFunctionOracle::neg_sqrt();
    CHECK_FALSE(exact_subdifferential_box(ns, Point{0.0}).has_value());
    CHECK_FALSE(exact_subdifferential_box(ns, Point{-1.0}).has_value());
    const auto at4 = exact_subdifferential_box(ns, Point{4.0});
    REQUIRE(at4.has_value());
    CHECK((*at4)[0].lo == -0.25);
    CHECK((*at4)[0].hi == -0.25);

    const auto abs = ConvexFunctionOracle::abs();
    const auto at0 = exact_subdifferential_box(abs, Point{0.0});
    REQUIRE(at0.has_value());
    CHECK((*at0)[0].lo == -1.0);
    CHECK((*at0)[0].hi == 1.0);
    const auto mixed = exact_subdifferential_box(abs, Point{3.0, -2.0});
    REQUIRE(mixed.has_value());
    CHECK((*mixed)[0].lo == 1.0);
    CHECK((*mixed)[1].hi == -1.0);

    const auto quad = ConvexFunctionOracle::quadratic(Point{2.0, 3.0});
    const auto g = exact_subdifferential_box(quad, Point{0.0, 0.0});
    REQUIRE(g.has_value());
    CHECK((*g)[0].lo == -2.0);
    CHECK((*g)[1].lo == -3.0);

    const auto box = ConvexFunctionOracle::indicator(ConvexSet::box(Point{1.0}, Point{2.0}));
    const auto interior = exact_subdifferential_box(box, Point{1.5});
    REQUIRE(interior.has_value());
    CHECK((*interior)[0].lo == 0.0);
    CHECK((*interior)[0].hi == 0.0);
    const auto at_lo = exact_subdifferential_box(box, Point{1.0});
    REQUIRE(at_lo.has_value());
    CHECK((*at_lo)[0].lo == -kInf);
    CHECK((*at_lo)[0].hi == 0.0);
    CHECK_FALSE(exact_subdifferential_box(box, Point{0.5}).has_value());

    const auto single =
        ConvexFunctionOracle::indicator(ConvexSet::singleton(Point{0.0}));
    const auto whole = exact_subdifferential_box(single, Point{0.0});
    REQUIRE(whole.has_value());
    CHECK((*whole)[0].lo == -kInf);
    CHECK((*whole)[0].hi == kInf);

    const auto half1 = ConvexFunctionOracle::indicator(ConvexSet::halfspace(Point{1.0}, 1.0));
    const auto cone = exact_subdifferential_box(half1, Point{1.0});
    REQUIRE(cone.has_value());
    CHECK((*cone)[0].lo == 0.0);
    CHECK((*cone)[0].hi == kInf);

    const auto half2 = ConvexFunctionOracle::indicator(
        ConvexSet::halfspace(Point{1.0, 1.0}, 2.0));
    CHECK_THROWS_AS(exact_subdifferential_box(half2, Point{1.0, 1.0}),
                    UnsupportedOracleError);
    const auto ball =
        ConvexFunctionOracle::indicator(ConvexSet::ball(Point{0.0}, 1.0));
    CHECK_THROWS_AS(exact_subdifferential_box(ball, Point{0.0}), UnsupportedOracleError);
}

TEST_CASE("sampled graph monotonicity") {
    SampledOperator identity;
    for (int i = -5; i <= 5; ++i) {
        identity.graph.emplace_back(Point{static_cast<double>(i)},
                                    Point{static_cast<double>(i)});
    }
    CHECK(check_monotone_graph(identity));

    SampledOperator swapped;
    swapped.graph.emplace_back(Point{0.0}, Point{1.0});
    swapped.graph.emplace_back(Point{1.0}, Point{0.0});
    CHECK_FALSE(check_monotone_graph(swapped));
}

TEST_CASE("enlargement membership against the identity graph") {
    SampledOperator identity;
    for (double y = -4.0; y <= 4.0; y += 0.05) {
        identity.graph.emplace_back(Point{y}, Point{y});
    }
    // |u - x| <= 2*sqrt(eps) characterizes the identity enlargement; u = 2 at
    // x = 0, eps = 1 sits exactly on the boundary.
    CHECK(check_eps_enlargement(identity, Point{0.0}, Point{2.0}, 1.0));
    // u = 2.1 fails: the graph point y = 1.05 drives the product to -1.1025.
    CHECK_FALSE(check_eps_enlargement(identity, Point{0.0}, Point{2.1}, 1.0));
    CHECK(check_eps_enlargement(identity, Point{0.5}, Point{0.5}, 0.0));
}
