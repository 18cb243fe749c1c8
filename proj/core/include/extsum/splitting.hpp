#pragma once

#include <optional>
#include <string>
#include <utility>

#include "extsum/averaging.hpp"
#include "extsum/oracles.hpp"
#include "extsum/point.hpp"
#include "extsum/schedule.hpp"
#include "extsum/trace.hpp"

namespace extsum {

struct AlgorithmConfig {
    explicit AlgorithmConfig(StepSchedule s) : schedule(std::move(s)) {}

    StepSchedule schedule;
    SelectionStrategy strategy = SelectionStrategy::min_norm();
    long max_iter = 1000;
    long record_every = 1;
    // Runs even when the schedule fails its validity gate; the override is
    // recorded in the trace header.
    bool unsafe_schedule = false;
    // Optional early stop once dist(xbar_n, solution_set) drops below this;
    // requires a known solution set.
    std::optional<double> stop_tol;
};

// Zero-of-sum problem: find x with 0 in (A + B)(x), A accessed through its
// resolvent (backward) and B through approximate-subgradient selections
// (forward).
struct ProblemSpec {
    ProblemSpec(ConvexFunctionOracle backward_op, ConvexFunctionOracle forward_op, Point start);

    ConvexFunctionOracle backward;
    ConvexFunctionOracle forward;
    Point x0;

    std::string id; // empty for ad-hoc problems
    std::optional<ConvexSet> solution_set;
    // Whether the solution set is known to be exactly the zeros of A + B
    // (rather than of an extended sum that may be strictly larger).
    bool h2prime_holds = false;
    // Expected supremum of eps_n*||u_n||, when the problem author knows one.
    std::optional<double> h1_bound_hint;
    // Author's declaration that the domain inclusion required by the
    // convergence theory holds; recorded, not enforced.
    bool domain_condition_declared = true;
};

// One iteration x -> resolvent(A, lambda, x - lambda*u) with
// u = eps_subgradient(B, x, eps, strategy). Returns the advanced state (the
// running average extended with (x_next, lambda)) and the selection u.
std::pair<IterationState, Point> efb_step(const ProblemSpec& problem,
                                          const IterationState& state, double lambda,
                                          double eps, const SelectionStrategy& strategy);

// Runs max_iter steps from x0 under the given schedule. Row n records the
// iterate x_n, its running average and the selection made at x_n; a final
// row records the end state. Oracle failures abort the run and leave the
// partial trace with an error annotation.
ConvergenceTrace run_efb(const ProblemSpec& problem, const AlgorithmConfig& config);

// Specialization for backward = indicator: the classical projected
// approximate-subgradient method. Identical arithmetic to run_efb; only the
// algorithm label differs.
ConvergenceTrace run_projected_eps_subgradient(const ProblemSpec& problem,
                                               const AlgorithmConfig& config);

// Classical forward-backward baseline: exact subgradients (eps forced to 0),
// schedule gate sum lambda_n = inf, sum lambda_n^2 < inf. Aborts with an
// error annotation at the first iterate whose exact subdifferential is
// empty.
ConvergenceTrace run_passty_fb(const ProblemSpec& problem, const AlgorithmConfig& config);

} // namespace extsum
