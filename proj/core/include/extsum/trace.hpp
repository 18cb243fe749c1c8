#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extsum/point.hpp"

namespace extsum {

// One monitored iterate. Row n pairs x_n and xbar_n with the schedule values
// and the oracle selection u_n evaluated AT x_n (the step leaving x_n), so
// eps_u_norm is the boundedness quantity eps_n*||u_n|| for that n.
struct TraceRow {
    long n = 0;
    double lambda = 0.0;
    double eps = 0.0;
    Point x;
    Point xbar;
    double eps_u_norm = 0.0;
    std::optional<double> dist_to_solution; // empty when no solution set is known
};

struct TraceMeta {
    std::string problem_id;
    std::string algorithm; // "efb" | "projected_eps_subgrad" | "passty"
    std::string schedule_kind = "power"; // "power" | "list"
    double schedule_c = 1.0;
    double schedule_p = 1.0;
    double schedule_q = 1.0 / 3.0;
    std::string strategy = "min_norm";
    std::uint64_t seed = 0;
    long max_iter = 0;
    long record_every = 1;
    std::size_t dimension = 0;
    bool schedule_valid = false;
    bool schedule_override = false; // run forced past a failed validity gate
    // Supremum of eps_n*||u_n|| over every step taken, including steps whose
    // rows were thinned away; thinning never hides a boundedness violation.
    double h1_running_sup = 0.0;
    std::optional<std::string> error; // set when the run aborted mid-iteration
};

struct ConvergenceTrace {
    TraceMeta meta;
    std::vector<TraceRow> rows; // strictly increasing n
};

} // namespace extsum
