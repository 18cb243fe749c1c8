#include "extsum/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extsum/errors.hpp"

namespace extsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rows_eps_u_sup(const ConvergenceTrace& trace) {
    double sup = 0.0;
    for (const auto& row : trace.rows) sup = std::max(sup, row.eps_u_norm);
    return sup;
}

} // namespace

TransportationCheck check_transportation(const SampledOperator& op, const Point& x,
                                         const Point& u, double eps1, const Point& y,
                                         const Point& v, double eps2, double tol) {
    if (eps1 < 0.0 || eps2 < 0.0) throw std::invalid_argument("eps must be >= 0");
    TransportationCheck result;
    result.lhs = dot(v - u, y - x);
    const double root_sum = std::sqrt(eps1) + std::sqrt(eps2);
    result.rhs = -(root_sum * root_sum);
    result.holds = result.lhs >= result.rhs - tol * std::max(1.0, std::abs(result.rhs));
    result.memberships_verified = check_eps_enlargement(op, x, u, eps1, tol) &&
                                  check_eps_enlargement(op, y, v, eps2, tol);
    return result;
}

H1Report check_h1(const ConvergenceTrace& trace, std::optional<double> bound) {
    if (trace.rows.empty()) throw std::invalid_argument("trace has no rows");
    H1Report report;
    report.sup = std::max(trace.meta.h1_running_sup, rows_eps_u_sup(trace));
    report.bound = bound;

    const std::size_t m = trace.rows.size();
    const std::size_t quartile = std::max<std::size_t>(1, m / 4);
    double first = 0.0;
    double last = 0.0;
    for (std::size_t i = 0; i < quartile; ++i) {
        first = std::max(first, trace.rows[i].eps_u_norm);
    }
    for (std::size_t i = m - quartile; i < m; ++i) {
        last = std::max(last, trace.rows[i].eps_u_norm);
    }
    report.first_quartile_sup = first;
    report.last_quartile_sup = last;
    // Heuristic: sustained >10% growth of the running bound between the
    // opening and closing quartiles.
    report.trend = last > first * 1.1 + 1e-12 ? Trend::growth : Trend::plateau;
    if (bound) {
        report.within_bound = report.sup <= *bound + 1e-12 * std::max(1.0, *bound);
    }
    return report;
}

FejerReport check_fejer(const ConvergenceTrace& trace, const Point& x_star, double M,
                        double slack) {
    if (trace.rows.size() < 2) throw std::invalid_argument("need at least two rows");
    if (trace.meta.record_every != 1) {
        throw InsufficientResolutionError(
            "trace was thinned (record_every = " + std::to_string(trace.meta.record_every) +
            "); the per-step inequality needs every iterate");
    }
    const double observed = rows_eps_u_sup(trace);
    if (M < observed) {
        throw std::invalid_argument("M must be at least the observed sup of eps_n*||u_n||");
    }
    FejerReport report;
    report.worst_violation = -kInf;
    const double factor = 4.0 * M * M + 12.0;
    for (std::size_t i = 0; i + 1 < trace.rows.size(); ++i) {
        const TraceRow& a = trace.rows[i];
        const TraceRow& b = trace.rows[i + 1];
        if (b.n != a.n + 1) {
            throw InsufficientResolutionError("trace rows are not consecutive");
        }
        const double da = distance(a.x, x_star);
        const double db = distance(b.x, x_star);
        const double allowance = std::pow(a.lambda, 4.0 / 3.0) * factor;
        const double excess = db * db - da * da - allowance;
        report.worst_violation = std::max(report.worst_violation, excess);
        if (excess > slack) ++report.violations;
        ++report.checked_pairs;
    }
    return report;
}

bool check_h2_example(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive and finite");
    }
    const auto f = ConvexFunctionOracle::neg_sqrt();
    const Point origin{0.0};
    const Point u{-1.0 / (4.0 * eps)};

    // Probe grid bracketing the tight point y = 4*eps^2 of the subgradient
    // inequality, plus wide log-spaced coverage.
    std::vector<Point> probes;
    probes.push_back(Point{0.0});
    const double tight = 4.0 * eps * eps;
    for (int k = -8; k <= 8; ++k) {
        probes.push_back(Point{tight * std::pow(10.0, k)});
    }
    probes.push_back(Point{tight});
    probes.push_back(Point{0.5 * tight});
    probes.push_back(Point{2.0 * tight});
    if (!check_eps_subgradient(f, origin, u, eps, probes)) return false;

    // The selection stays inside the ball of radius 1/(4*eps) ...
    const double radius = 1.0 / (4.0 * eps);
    if (std::abs(u[0]) > radius * (1.0 + 1e-12)) return false;

    // ... and is cancelled by +1/(4*eps), an eps-subgradient of the
    // indicator of {0} at 0.
    const auto ind = ConvexFunctionOracle::indicator(ConvexSet::singleton(Point{0.0}));
    const std::vector<Point> set_probes{Point{0.0}};
    return check_eps_subgradient(ind, origin, Point{radius}, eps, set_probes);
}

H2PrimeReport check_h2prime(const ProblemSpec& problem, std::span<const Point> candidates,
                            std::span<const Point> probes) {
    if (probes.empty()) throw std::invalid_argument("probe set must be nonempty");
    H2PrimeReport report;
    for (const Point& x : candidates) {
        const double tol = 1e-12 * std::max(1.0, norm(x));
        const bool in_a = problem.backward.in_domain(x, tol);
        const bool in_b = problem.forward.in_domain(x, tol);
        if (!in_a && !in_b) {
            throw DomainError("candidate " + to_string(x) + " lies outside both domains");
        }
        if (!in_a || !in_b) continue;
        const auto box_a = exact_subdifferential_box(problem.backward, x);
        const auto box_b = exact_subdifferential_box(problem.forward, x);
        if (!box_a || !box_b) continue;

        // Componentwise intersection of dA(x) with -dB(x).
        Point v = Point::zeros(x.dim());
        bool feasible = true;
        for (std::size_t i = 0; i < x.dim(); ++i) {
            const double lo = std::max((*box_a)[i].lo, -(*box_b)[i].hi);
            const double hi = std::min((*box_a)[i].hi, -(*box_b)[i].lo);
            if (lo > hi) {
                feasible = false;
                break;
            }
            if (lo <= 0.0 && 0.0 <= hi) {
                v[i] = 0.0;
            } else {
                v[i] = lo > 0.0 ? lo : hi;
            }
        }
        if (!feasible) continue;
        if (check_eps_subgradient(problem.backward, x, v, 0.0, probes, 1e-9) &&
            check_eps_subgradient(problem.forward, x, -v, 0.0, probes, 1e-9)) {
            report.verified.push_back(H2PrimeMatch{x, v});
        }
    }
    return report;
}

HypothesisReport run_hypothesis_checks(const ConvergenceTrace& trace,
                                       const std::optional<Point>& x_star,
                                       std::optional<double> h1_bound, H2Status h2_status,
                                       double fejer_slack) {
    HypothesisReport report;
    const H1Report h1 = check_h1(trace, h1_bound);
    report.h1_sup = h1.sup;
    report.h1_trend = h1.trend;
    report.h1_bound = h1.bound;
    report.h1_within_bound = h1.within_bound;
    report.h1_first_quartile_sup = h1.first_quartile_sup;
    report.h1_last_quartile_sup = h1.last_quartile_sup;
    report.h2 = h2_status;

    if (x_star && trace.meta.record_every == 1 && trace.rows.size() >= 2) {
        report.fejer_bound_m = h1.sup + 0.01;
        const FejerReport fejer = check_fejer(trace, *x_star, report.fejer_bound_m, fejer_slack);
        report.fejer_checked = true;
        report.fejer_violations = fejer.violations;
        report.fejer_worst_violation = fejer.worst_violation;
    }

    report.passed = report.h1_within_bound && report.h1_trend == Trend::plateau &&
                    report.fejer_violations == 0;
    return report;
}

} // namespace extsum
