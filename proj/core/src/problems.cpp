#include "extsum/problems.hpp"

#include <stdexcept>

namespace extsum {

namespace {

BuiltinProblem make_paper_example() {
    ProblemSpec spec(ConvexFunctionOracle::indicator(ConvexSet::singleton(Point{0.0})),
                     ConvexFunctionOracle::neg_sqrt(), Point{4.0});
    spec.id = "paper-example";
    spec.solution_set = ConvexSet::singleton(Point{0.0});
    spec.h2prime_holds = false; // A + B has no zero in the classical sense
    spec.h1_bound_hint = 0.25;  // boundary selection mass is exactly 1/4
    HypothesisNotes notes;
    notes.h1_bound = 0.25;
    notes.h2 = H2Status::verified;
    notes.h2prime = false;
    notes.passty_applicable = false; // exact subdifferential empty at x = 0
    return BuiltinProblem{"paper-example",
                          "min -sqrt(x) subject to x = 0; solvable only through "
                          "approximate selections",
                          std::move(spec), Point{0.0}, notes};
}

BuiltinProblem make_quad_halfspace() {
    ProblemSpec spec(ConvexFunctionOracle::indicator(ConvexSet::halfspace(Point{1.0}, 1.0)),
                     ConvexFunctionOracle::quadratic(Point{2.0}), Point{-3.0});
    spec.id = "quad-halfspace";
    spec.solution_set = ConvexSet::singleton(Point{1.0});
    spec.h2prime_holds = true;
    spec.h1_bound_hint = 7.0; // eps_1*(||x_0 - 2|| + sqrt(2)) with margin
    HypothesisNotes notes;
    notes.h1_bound = 7.0;
    notes.h2 = H2Status::verified;
    notes.h2prime = true;
    return BuiltinProblem{"quad-halfspace", "min 0.5*(x-2)^2 subject to x <= 1",
                          std::move(spec), Point{1.0}, notes};
}

BuiltinProblem make_abs_box() {
    ProblemSpec spec(ConvexFunctionOracle::indicator(ConvexSet::box(Point{1.0}, Point{2.0})),
                     ConvexFunctionOracle::abs(), Point{2.0});
    spec.id = "abs-box";
    spec.solution_set = ConvexSet::singleton(Point{1.0});
    spec.h2prime_holds = true;
    spec.h1_bound_hint = 1.0; // selections stay in [-1, 1], eps_n <= 1
    HypothesisNotes notes;
    notes.h1_bound = 1.0;
    notes.h2 = H2Status::verified;
    notes.h2prime = true;
    return BuiltinProblem{"abs-box", "min |x| subject to 1 <= x <= 2", std::move(spec),
                          Point{1.0}, notes};
}

BuiltinProblem make_quad_box_2d() {
    ProblemSpec spec(
        ConvexFunctionOracle::indicator(ConvexSet::box(Point{0.0, 0.0}, Point{1.0, 1.0})),
        ConvexFunctionOracle::quadratic(Point{2.0, 3.0}), Point{0.0, 0.0});
    spec.id = "quad-box-2d";
    spec.solution_set = ConvexSet::singleton(Point{1.0, 1.0});
    spec.h2prime_holds = true;
    spec.h1_bound_hint = 6.0; // eps_1*(||x_0 - a|| + sqrt(2)) with margin
    HypothesisNotes notes;
    notes.h1_bound = 6.0;
    notes.h2 = H2Status::verified;
    notes.h2prime = true;
    return BuiltinProblem{"quad-box-2d", "min 0.5*||x-(2,3)||^2 subject to x in [0,1]^2",
                          std::move(spec), Point{1.0, 1.0}, notes};
}

const std::vector<BuiltinProblem>& registry() {
    static const std::vector<BuiltinProblem> problems = [] {
        std::vector<BuiltinProblem> out;
        out.push_back(make_paper_example());
        out.push_back(make_quad_halfspace());
        out.push_back(make_abs_box());
        out.push_back(make_quad_box_2d());
        return out;
    }();
    return problems;
}

} // namespace

const BuiltinProblem* find_builtin(const std::string& id) {
    for (const auto& p : registry()) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const BuiltinProblem& builtin(const std::string& id) {
    if (const auto* p = find_builtin(id)) return *p;
    std::string known;
    for (const auto& p : registry()) {
        if (!known.empty()) known += ", ";
        known += p.id;
    }
    throw std::invalid_argument("unknown problem id '" + id + "' (known: " + known + ")");
}

std::vector<std::string> builtin_ids() {
    std::vector<std::string> out;
    for (const auto& p : registry()) out.push_back(p.id);
    return out;
}

} // namespace extsum
