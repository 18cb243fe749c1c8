#include "extsum/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>

#include <nlohmann/json.hpp>

#include "extsum/diagnostics.hpp"
#include "extsum/errors.hpp"
#include "extsum/problems.hpp"
#include "extsum/splitting.hpp"
#include "extsum/trace_io.hpp"

namespace extsum {

namespace {

using nlohmann::json;

const char* trend_name(Trend t) { return t == Trend::growth ? "growth" : "plateau"; }

const char* h2_name(H2Status s) {
    switch (s) {
    case H2Status::verified: return "verified";
    case H2Status::refuted: return "refuted";
    case H2Status::unknown: return "unknown";
    }
    return "unknown";
}

SelectionStrategy parse_strategy(const std::string& name, std::uint64_t seed) {
    if (name == "boundary") return SelectionStrategy::boundary();
    if (name == "random") return SelectionStrategy::random(seed);
    return SelectionStrategy::min_norm();
}

json report_to_json(const HypothesisReport& report, const ConvergenceTrace& trace) {
    json j;
    j["problem_id"] = trace.meta.problem_id;
    j["algorithm"] = trace.meta.algorithm;
    j["rows"] = trace.rows.size();
    j["run_error"] = trace.meta.error ? json(*trace.meta.error) : json(nullptr);
    j["h1"] = {{"sup", report.h1_sup},
               {"trend", trend_name(report.h1_trend)},
               {"bound", report.h1_bound ? json(*report.h1_bound) : json(nullptr)},
               {"within_bound", report.h1_within_bound},
               {"first_quartile_sup", report.h1_first_quartile_sup},
               {"last_quartile_sup", report.h1_last_quartile_sup}};
    j["h2"] = h2_name(report.h2);
    if (report.fejer_checked) {
        j["fejer"] = {{"checked", true},
                      {"violations", report.fejer_violations},
                      {"worst_violation", report.fejer_worst_violation},
                      {"bound_m", report.fejer_bound_m}};
    } else {
        j["fejer"] = {{"checked", false}};
    }
    j["passed"] = report.passed;
    return j;
}

// EXTSUM_SEED wins over config and flags when set. Returns false (after
// reporting) when the variable is set but unparsable.
bool apply_env_seed(RunConfig& config, std::ostream& err) {
    const char* env = std::getenv("EXTSUM_SEED");
    if (env == nullptr) return true;
    std::uint64_t seed = 0;
    const std::string text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        err << "EXTSUM_SEED is not an unsigned integer: '" << text << "'\n";
        return false;
    }
    config.seed = seed;
    return true;
}

} // namespace

int cmd_run(const RunConfig& config_in, std::ostream& out, std::ostream& err) {
    RunConfig config = config_in;
    if (!apply_env_seed(config, err)) return 1;

    const auto errors = config.validate();
    if (!errors.empty()) {
        for (const auto& e : errors) err << "config error: " << e << "\n";
        return 1;
    }
    const BuiltinProblem* problem = find_builtin(config.problem);
    if (problem == nullptr) {
        err << "unknown problem id '" << config.problem << "'\n";
        return 1;
    }

    ConvergenceTrace trace;
    try {
        AlgorithmConfig algo(StepSchedule::power(config.c, config.p, config.q));
        algo.strategy = parse_strategy(config.strategy, config.seed);
        algo.max_iter = config.max_iter;
        algo.record_every = config.record_every;
        algo.unsafe_schedule = config.unsafe_schedule;

        if (config.algorithm == "projected_eps_subgrad") {
            trace = run_projected_eps_subgradient(problem->spec, algo);
        } else if (config.algorithm == "passty") {
            trace = run_passty_fb(problem->spec, algo);
        } else {
            trace = run_efb(problem->spec, algo);
        }
    } catch (const ScheduleInvalidError& e) {
        err << "schedule rejected: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "run failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "run failed: " << e.what() << "\n";
        return 1;
    }

    try {
        write_trace_file(trace, config.output, config.format);
    } catch (const std::exception& e) {
        err << "cannot write trace to '" << config.output << "': " << e.what() << "\n";
        return 1;
    }
    out << "wrote " << trace.rows.size() << " rows to " << config.output << "\n";

    // A run that aborted mid-stream still produced a (partial) trace above;
    // the abort reason decides the exit code, not the hypothesis checks.
    if (trace.meta.error) {
        err << "run aborted: " << *trace.meta.error << "\n";
        return 1;
    }
    if (trace.meta.schedule_override) {
        out << "note: schedule relations overridden (--unsafe-schedule)\n";
    }

    HypothesisReport report = run_hypothesis_checks(
        trace, problem->solution, problem->notes.h1_bound, problem->notes.h2);

    if (!trace.rows.empty()) {
        const TraceRow& last = trace.rows.back();
        out << "final n=" << last.n;
        if (last.dist_to_solution) out << " dist_to_solution=" << *last.dist_to_solution;
        out << "\n";
    }
    out << "h1: sup=" << report.h1_sup << " trend=" << trend_name(report.h1_trend);
    if (report.h1_bound) {
        out << " bound=" << *report.h1_bound
            << (report.h1_within_bound ? " (within)" : " (EXCEEDED)");
    }
    out << "\n";
    out << "h2: " << h2_name(report.h2) << "\n";
    if (report.fejer_checked) {
        out << "fejer: " << report.fejer_violations << " violation(s) with M="
            << report.fejer_bound_m << "\n";
    } else {
        out << "fejer: not checked\n";
    }

    if (!report.passed) {
        err << "hypothesis checks failed\n";
        return 2;
    }
    out << "hypothesis checks passed\n";
    return 0;
}

int cmd_validate_schedule(double c, double p, double q, std::ostream& out, std::ostream& err) {
    ValidityReport report;
    try {
        report = validate_schedule(StepSchedule::power(c, p, q));
    } catch (const std::invalid_argument& e) {
        err << "invalid schedule parameters: " << e.what() << "\n";
        return 1;
    }
    for (const auto& relation : report.relations) {
        out << (relation.holds ? "[ ok ] " : "[FAIL] ") << relation.name << ": "
            << relation.detail << "\n";
    }
    out << "schedule c=" << c << " p=" << p << " q=" << q << " is "
        << (report.valid ? "valid" : "invalid") << "\n";
    return report.valid ? 0 : 2;
}

int cmd_diagnose(const std::string& trace_path, std::ostream& out, std::ostream& err) {
    ConvergenceTrace trace;
    try {
        trace = read_trace_file(trace_path);
    } catch (const std::exception& e) {
        err << "cannot read trace '" << trace_path << "': " << e.what() << "\n";
        return 1;
    }
    if (trace.rows.empty()) {
        err << "trace '" << trace_path << "' has no rows to diagnose\n";
        return 1;
    }

    // Reconstruct problem context when the trace came from a builtin; traces
    // of unknown problems still get the solution-free checks.
    std::optional<Point> x_star;
    std::optional<double> h1_bound;
    H2Status h2 = H2Status::unknown;
    if (const BuiltinProblem* problem = find_builtin(trace.meta.problem_id)) {
        x_star = problem->solution;
        h1_bound = problem->notes.h1_bound;
        h2 = problem->notes.h2;
    }

    HypothesisReport report;
    try {
        report = run_hypothesis_checks(trace, x_star, h1_bound, h2);
    } catch (const std::exception& e) {
        err << "diagnosis failed: " << e.what() << "\n";
        return 1;
    }
    out << report_to_json(report, trace).dump(2) << "\n";
    return report.passed ? 0 : 2;
}

int cmd_list_problems(std::ostream& out) {
    for (const auto& id : builtin_ids()) {
        const BuiltinProblem* problem = find_builtin(id);
        out << id << "\n    " << problem->description << "\n    dimension "
            << problem->spec.x0.dim() << ", solution " << to_string(problem->solution);
        if (problem->notes.passty_applicable) out << ", passty applicable";
        out << "\n";
    }
    return 0;
}

} // namespace extsum
