#pragma once

#include <optional>
#include <span>
#include <vector>

#include "extsum/oracles.hpp"
#include "extsum/point.hpp"
#include "extsum/splitting.hpp"
#include "extsum/trace.hpp"

namespace extsum {

enum class Trend { plateau, growth };
enum class H2Status { verified, refuted, unknown };

// Two-point inequality satisfied by approximate enlargements of a monotone
// operator: <v - u, y - x> >= -(sqrt(eps1) + sqrt(eps2))^2.
struct TransportationCheck {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    // Both points passed the (necessary-condition) membership test against
    // the sampled graph; when false the check is vacuous.
    bool memberships_verified = false;
};
TransportationCheck check_transportation(const SampledOperator& op, const Point& x,
                                         const Point& u, double eps1, const Point& y,
                                         const Point& v, double eps2, double tol = 1e-12);

// Boundedness monitor for the sequence eps_n*||u_n||. sup includes the
// running supremum carried in the trace header, so thinned steps count.
// The trend compares the last quartile of recorded rows against the first;
// sustained growth suggests the boundedness hypothesis fails.
struct H1Report {
    double sup = 0.0;
    Trend trend = Trend::plateau;
    std::optional<double> bound;
    bool within_bound = true;
    double first_quartile_sup = 0.0;
    double last_quartile_sup = 0.0;
};
H1Report check_h1(const ConvergenceTrace& trace, std::optional<double> bound = std::nullopt);

// Counts violations of the per-step inequality
//   ||x_{n+1} - x*||^2 <= ||x_n - x*||^2 + lambda_n^(4/3) * (4*M^2 + 12)
// over consecutive recorded rows. Requires a full-resolution trace
// (record_every = 1) and M at least the observed sup of eps_n*||u_n||.
struct FejerReport {
    long violations = 0;
    double worst_violation = 0.0; // most positive excess over the bound
    long checked_pairs = 0;
};
FejerReport check_fejer(const ConvergenceTrace& trace, const Point& x_star, double M,
                        double slack = 1e-9);

// Analytic witness check at the origin of the canonical pathological
// problem (f = -sqrt on [0, inf), C = {0}): u = -1/(4*eps) must be an
// eps-subgradient of f at 0, lie in the ball of radius 1/(4*eps), and be
// cancelled by an eps-subgradient of the indicator. True for every eps > 0,
// which is exactly why the intersection over eps stays nonempty while the
// exact subdifferential at 0 is empty.
bool check_h2_example(double eps);

// Searches each candidate x for v with v in dA(x) and -v in dB(x) (exact
// subdifferentials), confirming membership through check_eps_subgradient at
// eps = 0 over the probe set. Candidates where the search succeeds are
// zeros of A + B in the classical sense.
struct H2PrimeMatch {
    Point x;
    Point v;
};
struct H2PrimeReport {
    std::vector<H2PrimeMatch> verified;
};
H2PrimeReport check_h2prime(const ProblemSpec& problem, std::span<const Point> candidates,
                            std::span<const Point> probes);

// Everything the monitors can say about one finished trace.
struct HypothesisReport {
    double h1_sup = 0.0;
    Trend h1_trend = Trend::plateau;
    std::optional<double> h1_bound;
    bool h1_within_bound = true;
    double h1_first_quartile_sup = 0.0;
    double h1_last_quartile_sup = 0.0;
    H2Status h2 = H2Status::unknown;
    bool fejer_checked = false;
    long fejer_violations = 0;
    double fejer_worst_violation = 0.0;
    double fejer_bound_m = 0.0;
    bool passed = true; // no monitored hypothesis was violated
};
HypothesisReport run_hypothesis_checks(const ConvergenceTrace& trace,
                                       const std::optional<Point>& x_star,
                                       std::optional<double> h1_bound, H2Status h2_status,
                                       double fejer_slack = 1e-9);

} // namespace extsum
