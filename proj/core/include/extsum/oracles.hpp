#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "extsum/point.hpp"

namespace extsum {

enum class SetKind { singleton, box, halfspace, ball };

// Closed convex set with an exact Euclidean projection.
class ConvexSet {
public:
    static ConvexSet singleton(Point p);
    static ConvexSet box(Point lo, Point hi);          // componentwise lo <= x <= hi
    static ConvexSet halfspace(Point g, double b);     // <g, x> <= b, g != 0
    static ConvexSet ball(Point center, double radius);

    SetKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept;
    bool contains(const Point& z, double tol = 0.0) const;
    Point project(const Point& z) const;

    // Accessors are only meaningful for the matching kind.
    const Point& point() const { return a_; }
    const Point& lower() const { return a_; }
    const Point& upper() const { return b_; }
    const Point& normal() const { return a_; }
    const Point& center() const { return a_; }
    double offset() const { return scalar_; }
    double radius() const { return scalar_; }

private:
    ConvexSet(SetKind kind, Point a, Point b, double scalar)
        : kind_(kind), a_(std::move(a)), b_(std::move(b)), scalar_(scalar) {}
    SetKind kind_;
    Point a_;
    Point b_;
    double scalar_ = 0.0;
};

Point project(const ConvexSet& set, const Point& z);

enum class FunctionKind { neg_sqrt, quadratic, abs, indicator, linear };

// Proper closed convex function with closed-form approximate-subgradient
// selections and (where supported) a closed-form resolvent.
//
//   neg_sqrt      f(t) = -sqrt(t) for t >= 0, +inf otherwise (1D)
//   quadratic(a)  f(x) = 0.5*||x - a||^2
//   abs           f(x) = sum_i |x_i| (selections beyond the exact
//                 subgradient implemented for d = 1)
//   indicator(C)  f(x) = 0 on C, +inf otherwise
//   linear(g)     f(x) = <g, x>
class ConvexFunctionOracle {
public:
    static ConvexFunctionOracle neg_sqrt();
    static ConvexFunctionOracle quadratic(Point a);
    static ConvexFunctionOracle abs();
    static ConvexFunctionOracle indicator(ConvexSet c);
    static ConvexFunctionOracle linear(Point g);

    FunctionKind kind() const noexcept { return kind_; }
    // Empty for kinds usable in any dimension (abs).
    std::optional<std::size_t> dim() const noexcept;
    double eval(const Point& x) const; // +inf outside the domain
    bool in_domain(const Point& x, double tol = 0.0) const;

    const ConvexSet& set() const;   // indicator only
    const Point& anchor() const;    // quadratic: a, linear: g

private:
    ConvexFunctionOracle(FunctionKind kind, std::optional<Point> a, std::optional<ConvexSet> set)
        : kind_(kind), a_(std::move(a)), set_(std::move(set)) {}
    FunctionKind kind_;
    std::optional<Point> a_;
    std::optional<ConvexSet> set_;
};

// How to pick one element from the approximate subdifferential at tolerance
// eps. min_norm returns the exact subgradient of least norm when one exists
// (making the iteration coincide with its classical exact counterpart) and
// otherwise the least-norm element of the eps-set. boundary returns an
// extreme element of the eps-set, exercising the slack. random draws a
// reproducible point between those two selections; the draw is a pure
// function of the seed.
struct SelectionStrategy {
    enum class Kind { min_norm, boundary, random };
    Kind kind = Kind::min_norm;
    std::uint64_t seed = 0;

    static SelectionStrategy min_norm() { return {Kind::min_norm, 0}; }
    static SelectionStrategy boundary() { return {Kind::boundary, 0}; }
    static SelectionStrategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

// Derives an independent per-step seed from a base seed; used by the runners
// so the random strategy varies across iterations while each oracle call
// stays a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t base, long step);

// One element of the eps-subdifferential of f at x:
//   { u : f(x) + <u, y - x> <= f(y) + eps for all y }.
// eps = 0 asks for an exact subgradient.
Point eps_subgradient(const ConvexFunctionOracle& f, const Point& x, double eps,
                      const SelectionStrategy& strategy);

// Verifies the defining inequality of the eps-subdifferential over a finite
// probe set. Necessary-condition check: false certifies a violation (beyond
// the slack), true only certifies the probes. Probes outside dom f are
// automatically satisfied. tol is relative to the magnitudes involved.
bool check_eps_subgradient(const ConvexFunctionOracle& f, const Point& x, const Point& u,
                           double eps, std::span<const Point> probes, double tol = 1e-12);

// (I + lambda * df)^{-1}(z), i.e. the unique p with z - p in lambda*df(p).
// Supported: indicator (projection, any lambda), quadratic, abs
// (componentwise shrinkage), linear. neg_sqrt has no closed form and throws.
Point resolvent(const ConvexFunctionOracle& f, double lambda, const Point& z);
bool has_resolvent(const ConvexFunctionOracle& f) noexcept;

// Exact subdifferential of f at x when it is a coordinate box (possibly
// unbounded); empty optional when the subdifferential is empty. Throws
// UnsupportedOracleError for kinds without a box-shaped subdifferential
// (halfspace indicators in dimension > 1).
struct Interval {
    double lo;
    double hi;
};
std::optional<std::vector<Interval>> exact_subdifferential_box(const ConvexFunctionOracle& f,
                                                               const Point& x);

// Finite sample of an operator graph: pairs (x, T(x)).
struct SampledOperator {
    std::vector<std::pair<Point, Point>> graph;
};

// True when the sampled graph is monotone: <u - v, x - y> >= -tol for every
// pair of graph entries.
bool check_monotone_graph(const SampledOperator& op, double tol = 1e-12);

// Membership test for the eps-enlargement of the sampled operator:
//   <v - u, y - x> >= -eps for all (y, v) in the graph.
// Necessary condition only: the sample cannot certify membership in the
// enlargement of the underlying operator, but a false result refutes it.
bool check_eps_enlargement(const SampledOperator& op, const Point& x, const Point& u,
                           double eps, double tol = 1e-12);

} // namespace extsum
