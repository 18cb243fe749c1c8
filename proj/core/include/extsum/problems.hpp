#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extsum/diagnostics.hpp"
#include "extsum/point.hpp"
#include "extsum/splitting.hpp"

namespace extsum {

// What is known analytically about a builtin problem's hypotheses.
struct HypothesisNotes {
    std::optional<double> h1_bound;
    H2Status h2 = H2Status::unknown;
    bool h2prime = false;
    // False when the classical exact-subgradient baseline breaks down on the
    // problem's own trajectory.
    bool passty_applicable = true;
};

struct BuiltinProblem {
    std::string id;
    std::string description;
    ProblemSpec spec;
    Point solution;
    HypothesisNotes notes;
};

// Registered problems:
//   paper-example   min -sqrt(x) over {0}: exact subdifferential empty at
//                   the solution, eps-selections carry constant mass 1/4
//   quad-halfspace  min 0.5*(x-2)^2 over x <= 1
//   abs-box         min |x| over [1, 2]
//   quad-box-2d     min 0.5*||x-(2,3)||^2 over [0,1]^2
const BuiltinProblem& builtin(const std::string& id); // unknown id throws
std::vector<std::string> builtin_ids();
const BuiltinProblem* find_builtin(const std::string& id); // nullptr when unknown

} // namespace extsum
