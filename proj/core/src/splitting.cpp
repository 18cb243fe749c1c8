#include "extsum/splitting.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "extsum/errors.hpp"

namespace extsum {

namespace {

const char* strategy_name(SelectionStrategy::Kind kind) {
    switch (kind) {
    case SelectionStrategy::Kind::min_norm: return "min_norm";
    case SelectionStrategy::Kind::boundary: return "boundary";
    case SelectionStrategy::Kind::random: return "random";
    }
    return "min_norm";
}

// random draws vary per step but stay a pure function of (seed, step).
SelectionStrategy strategy_for_step(const SelectionStrategy& base, long step) {
    if (base.kind != SelectionStrategy::Kind::random) return base;
    return SelectionStrategy::random(derive_seed(base.seed, step));
}

// Schedule values for the trailing trace row; list schedules may end exactly
// at max_iter, in which case the last available entry is reused.
std::pair<double, double> schedule_at_clamped(const StepSchedule& schedule, long n) {
    if (auto len = schedule.length()) {
        const long last = static_cast<long>(*len);
        if (n > last) n = last;
    }
    return schedule.at(n);
}

enum class Mode { efb, passty };

ConvergenceTrace run_impl(const ProblemSpec& problem, const AlgorithmConfig& config,
                          Mode mode, const char* algorithm_label) {
    if (config.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (config.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    if (auto len = config.schedule.length()) {
        if (static_cast<long>(*len) < config.max_iter) {
            throw std::invalid_argument("schedule list shorter than max_iter");
        }
    }

    const ValidityReport validity = mode == Mode::passty
                                        ? validate_schedule_passty(config.schedule)
                                        : validate_schedule(config.schedule);
    if (!validity.valid && !config.unsafe_schedule) {
        std::string msg = "schedule fails convergence relations:";
        for (const auto& r : validity.reasons()) msg += " " + r;
        throw ScheduleInvalidError(msg);
    }

    const SelectionStrategy base_strategy = mode == Mode::passty
                                                ? SelectionStrategy::min_norm()
                                                : config.strategy;

    ConvergenceTrace trace;
    TraceMeta& meta = trace.meta;
    meta.problem_id = problem.id;
    meta.algorithm = algorithm_label;
    if (const auto* pw = config.schedule.as_power()) {
        meta.schedule_kind = "power";
        meta.schedule_c = pw->c;
        meta.schedule_p = pw->p;
        meta.schedule_q = pw->q;
    } else {
        meta.schedule_kind = "list";
        meta.schedule_c = meta.schedule_p = meta.schedule_q = 0.0;
    }
    meta.strategy = strategy_name(base_strategy.kind);
    meta.seed = base_strategy.seed;
    meta.max_iter = config.max_iter;
    meta.record_every = config.record_every;
    meta.dimension = problem.x0.dim();
    meta.schedule_valid = validity.valid;
    meta.schedule_override = !validity.valid && config.unsafe_schedule;

    const auto dist_to_solution = [&](const Point& p) -> std::optional<double> {
        if (!problem.solution_set) return std::nullopt;
        return distance(p, problem.solution_set->project(p));
    };

    IterationState state = initial_state(problem.x0);
    bool aborted = false;
    for (long step = 0; step < config.max_iter; ++step) {
        const auto [lambda, eps_sched] = config.schedule.at(step);
        const double eps = mode == Mode::passty ? 0.0 : eps_sched;
        IterationState next;
        Point u;
        try {
            std::tie(next, u) = efb_step(problem, state, lambda, eps,
                                         strategy_for_step(base_strategy, step));
        } catch (const Error& e) {
            meta.error = std::string(e.what()) + " (at iteration n=" +
                         std::to_string(state.n) + ")";
            aborted = true;
            break;
        }
        const double eps_u = eps * norm(u);
        meta.h1_running_sup = std::max(meta.h1_running_sup, eps_u);
        if (state.n >= 1 && state.n % config.record_every == 0) {
            trace.rows.push_back(TraceRow{state.n, lambda, eps, state.x, state.xbar, eps_u,
                                          dist_to_solution(state.xbar)});
        }
        state = std::move(next);
        if (config.stop_tol && problem.solution_set) {
            const auto d = dist_to_solution(state.xbar);
            if (d && *d < *config.stop_tol) break;
        }
    }

    if (!aborted && state.n >= 1) {
        // Trailing row so the end state is always visible: probe the forward
        // oracle once more at x_n to fill the boundedness column.
        const auto [lambda, eps_sched] = schedule_at_clamped(config.schedule, state.n);
        const double eps = mode == Mode::passty ? 0.0 : eps_sched;
        try {
            const Point u = eps_subgradient(problem.forward, state.x, eps,
                                            strategy_for_step(base_strategy, state.n));
            const double eps_u = eps * norm(u);
            meta.h1_running_sup = std::max(meta.h1_running_sup, eps_u);
            trace.rows.push_back(TraceRow{state.n, lambda, eps, state.x, state.xbar, eps_u,
                                          dist_to_solution(state.xbar)});
        } catch (const Error&) {
            // End state has no valid selection; the run itself still
            // succeeded, so the trace simply ends at the last in-loop row.
        }
    }
    return trace;
}

} // namespace

ProblemSpec::ProblemSpec(ConvexFunctionOracle backward_op, ConvexFunctionOracle forward_op,
                         Point start)
    : backward(std::move(backward_op)), forward(std::move(forward_op)), x0(std::move(start)) {
    if (x0.dim() == 0) throw std::invalid_argument("x0 must have dimension >= 1");
    if (!x0.all_finite()) throw std::invalid_argument("x0 must be finite");
    if (auto d = backward.dim()) {
        if (*d != x0.dim()) {
            throw DimensionMismatchError("backward operator dimension does not match x0");
        }
    }
    if (auto d = forward.dim()) {
        if (*d != x0.dim()) {
            throw DimensionMismatchError("forward operator dimension does not match x0");
        }
    }
    if (!forward.in_domain(x0)) {
        throw DomainError("x0 = " + to_string(x0) + " lies outside the forward domain");
    }
}

std::pair<IterationState, Point> efb_step(const ProblemSpec& problem,
                                          const IterationState& state, double lambda,
                                          double eps, const SelectionStrategy& strategy) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive and finite");
    }
    const Point u = eps_subgradient(problem.forward, state.x, eps, strategy);
    const Point x_next = resolvent(problem.backward, lambda, state.x - lambda * u);
    IterationState next = average_update(state, x_next, lambda);
    next.last_u = u;
    return {std::move(next), u};
}

ConvergenceTrace run_efb(const ProblemSpec& problem, const AlgorithmConfig& config) {
    return run_impl(problem, config, Mode::efb, "efb");
}

ConvergenceTrace run_projected_eps_subgradient(const ProblemSpec& problem,
                                               const AlgorithmConfig& config) {
    if (problem.backward.kind() != FunctionKind::indicator) {
        throw SpecializationMismatchError(
            "projected eps-subgradient requires an indicator backward operator");
    }
    return run_impl(problem, config, Mode::efb, "projected_eps_subgrad");
}

ConvergenceTrace run_passty_fb(const ProblemSpec& problem, const AlgorithmConfig& config) {
    return run_impl(problem, config, Mode::passty, "passty");
}

} // namespace extsum
