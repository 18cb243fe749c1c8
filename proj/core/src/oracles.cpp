#include "extsum/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extsum/errors.hpp"

/* Selection formulas used below, with S_eps(f, x) the eps-subdifferential
 * { u : f(x) + <u, y-x> <= f(y) + eps for all y }.
 *
 * quadratic, f = 0.5*||. - a||^2:
 *   S_eps = (x - a) + sqrt(2*eps) * closed unit ball, since
 *   sup_w { <e, w> - 0.5*||w||^2 } = 0.5*||e||^2 <= eps  iff  ||e|| <= sqrt(2*eps).
 *
 * neg_sqrt, f(t) = -sqrt(t) on t >= 0:
 *   u qualifies iff u < 0 and sup_{y>=0} { sqrt(y) + u*y } = -1/(4u) stays
 *   below eps + sqrt(x) + u*x. At x = 0 this is the ray (-inf, -1/(4*eps)];
 *   at x > 0 it is the interval between the roots of
 *   x*u^2 + (eps + sqrt(x))*u + 1/4 = 0, which collapses onto the exact
 *   gradient -1/(2*sqrt(x)) as eps -> 0.
 *
 * abs (d = 1): S_eps(|.|, x) = [max(-1, 1 - eps/x), 1] for x > 0 (tight at
 *   y = 0), the mirror image for x < 0, and [-1, 1] at x = 0 independent of
 *   eps (the slope constraint as |y| -> inf dominates).
 *
 * indicator of C at x in C:
 *   singleton: every u qualifies (<u, 0> = 0).
 *   box, d = 1: [-eps/(x - lo), eps/(hi - x)] with infinite ends when x sits
 *     on the corresponding bound.
 *   halfspace <g, .> <= b: components orthogonal to g are excluded by
 *     feasible moves along them, leaving { t*g : 0 <= t <= eps/slack } with
 *     slack = b - <g, x> (the full ray when slack = 0).
 */

namespace extsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform draw in [0, 1), a pure function of the seed.
double unit_draw(std::uint64_t seed) {
    return static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53;
}

void require_dim(const Point& x, std::size_t d, const char* what) {
    if (x.dim() != d) {
        throw DimensionMismatchError(std::string(what) + ": expected dimension " +
                                     std::to_string(d) + ", got " + std::to_string(x.dim()));
    }
}

void require_finite(const Point& x, const char* what) {
    if (x.dim() == 0) {
        throw std::invalid_argument(std::string(what) + " must have dimension >= 1");
    }
    if (!x.all_finite()) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

void require_eps(double eps) {
    if (eps < 0.0 || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be finite and >= 0");
    }
}

// Interpolates between the least-norm and the extreme selection; both lie in
// the (convex) eps-set, so every point between them does too.
double lerp(double a, double b, double t) { return a + t * (b - a); }

} // namespace

std::uint64_t derive_seed(std::uint64_t base, long step) {
    return splitmix64(base + static_cast<std::uint64_t>(step + 1) * 0x9E3779B97F4A7C15ULL);
}

// ---------------------------------------------------------------------------
// ConvexSet

ConvexSet ConvexSet::singleton(Point p) {
    require_finite(p, "singleton point");
    return ConvexSet(SetKind::singleton, std::move(p), Point{}, 0.0);
}

ConvexSet ConvexSet::box(Point lo, Point hi) {
    require_finite(lo, "box lower bound");
    require_finite(hi, "box upper bound");
    if (lo.dim() != hi.dim()) throw DimensionMismatchError("box bounds dimension mismatch");
    for (std::size_t i = 0; i < lo.dim(); ++i) {
        if (lo[i] > hi[i]) throw std::invalid_argument("box requires lo <= hi componentwise");
    }
    return ConvexSet(SetKind::box, std::move(lo), std::move(hi), 0.0);
}

ConvexSet ConvexSet::halfspace(Point g, double b) {
    require_finite(g, "halfspace normal");
    if (!std::isfinite(b)) throw std::invalid_argument("halfspace offset must be finite");
    if (norm(g) == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
    return ConvexSet(SetKind::halfspace, std::move(g), Point{}, b);
}

ConvexSet ConvexSet::ball(Point center, double radius) {
    require_finite(center, "ball center");
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("ball radius must be finite and >= 0");
    }
    return ConvexSet(SetKind::ball, std::move(center), Point{}, radius);
}

std::size_t ConvexSet::dim() const noexcept { return a_.dim(); }

bool ConvexSet::contains(const Point& z, double tol) const {
    if (z.dim() != dim()) return false;
    switch (kind_) {
    case SetKind::singleton:
        for (std::size_t i = 0; i < z.dim(); ++i) {
            if (std::abs(z[i] - a_[i]) > tol) return false;
        }
        return true;
    case SetKind::box:
        for (std::size_t i = 0; i < z.dim(); ++i) {
            if (z[i] < a_[i] - tol || z[i] > b_[i] + tol) return false;
        }
        return true;
    case SetKind::halfspace:
        return dot(a_, z) <= scalar_ + tol;
    case SetKind::ball:
        return distance(z, a_) <= scalar_ + tol;
    }
    return false;
}

Point ConvexSet::project(const Point& z) const {
    require_dim(z, dim(), "projection input");
    require_finite(z, "projection input");
    switch (kind_) {
    case SetKind::singleton:
        return a_;
    case SetKind::box: {
        Point p = z;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            p[i] = std::min(std::max(p[i], a_[i]), b_[i]);
        }
        return p;
    }
    case SetKind::halfspace: {
        const double excess = dot(a_, z) - scalar_;
        if (excess <= 0.0) return z;
        return z - (excess / dot(a_, a_)) * a_;
    }
    case SetKind::ball: {
        const Point d = z - a_;
        const double nd = norm(d);
        if (nd <= scalar_) return z;
        return a_ + (scalar_ / nd) * d;
    }
    }
    return z;
}

Point project(const ConvexSet& set, const Point& z) { return set.project(z); }

// ---------------------------------------------------------------------------
// ConvexFunctionOracle

ConvexFunctionOracle ConvexFunctionOracle::neg_sqrt() {
    return ConvexFunctionOracle(FunctionKind::neg_sqrt, std::nullopt, std::nullopt);
}

ConvexFunctionOracle ConvexFunctionOracle::quadratic(Point a) {
    require_finite(a, "quadratic anchor");
    return ConvexFunctionOracle(FunctionKind::quadratic, std::move(a), std::nullopt);
}

ConvexFunctionOracle ConvexFunctionOracle::abs() {
    return ConvexFunctionOracle(FunctionKind::abs, std::nullopt, std::nullopt);
}

ConvexFunctionOracle ConvexFunctionOracle::indicator(ConvexSet c) {
    return ConvexFunctionOracle(FunctionKind::indicator, std::nullopt, std::move(c));
}

ConvexFunctionOracle ConvexFunctionOracle::linear(Point g) {
    require_finite(g, "linear gradient");
    return ConvexFunctionOracle(FunctionKind::linear, std::move(g), std::nullopt);
}

std::optional<std::size_t> ConvexFunctionOracle::dim() const noexcept {
    switch (kind_) {
    case FunctionKind::neg_sqrt: return 1;
    case FunctionKind::quadratic: return a_->dim();
    case FunctionKind::abs: return std::nullopt;
    case FunctionKind::indicator: return set_->dim();
    case FunctionKind::linear: return a_->dim();
    }
    return std::nullopt;
}

double ConvexFunctionOracle::eval(const Point& x) const {
    if (auto d = dim()) require_dim(x, *d, "eval input");
    switch (kind_) {
    case FunctionKind::neg_sqrt:
        return x[0] >= 0.0 ? -std::sqrt(x[0]) : kInf;
    case FunctionKind::quadratic: {
        const double d2 = dot(x - *a_, x - *a_);
        return 0.5 * d2;
    }
    case FunctionKind::abs: {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) s += std::abs(x[i]);
        return s;
    }
    case FunctionKind::indicator:
        return set_->contains(x, 0.0) ? 0.0 : kInf;
    case FunctionKind::linear:
        return dot(*a_, x);
    }
    return kInf;
}

bool ConvexFunctionOracle::in_domain(const Point& x, double tol) const {
    if (auto d = dim()) {
        if (x.dim() != *d) return false;
    }
    switch (kind_) {
    case FunctionKind::neg_sqrt: return x[0] >= -tol;
    case FunctionKind::indicator: return set_->contains(x, tol);
    default: return true;
    }
}

const ConvexSet& ConvexFunctionOracle::set() const {
    if (kind_ != FunctionKind::indicator) throw std::logic_error("not an indicator oracle");
    return *set_;
}

const Point& ConvexFunctionOracle::anchor() const {
    if (!a_) throw std::logic_error("oracle has no anchor point");
    return *a_;
}

// ---------------------------------------------------------------------------
// eps-subdifferential selections

namespace {

double strategy_draw(const SelectionStrategy& s) { return unit_draw(s.seed); }

Point select_neg_sqrt(const Point& x, double eps, const SelectionStrategy& strategy) {
    const double t = x[0];
    if (t < 0.0) throw DomainError("point outside domain: x = " + to_string(x));
    if (t == 0.0) {
        if (eps == 0.0) {
            throw EmptySubdifferentialError("exact subdifferential empty at x=0");
        }
        // Ray (-inf, -1/(4*eps)]; its least-norm element is the endpoint.
        return Point{-1.0 / (4.0 * eps)};
    }
    const double sq = std::sqrt(t);
    const double exact = -1.0 / (2.0 * sq);
    if (eps == 0.0 || strategy.kind == SelectionStrategy::Kind::min_norm) return Point{exact};
    // Upper root of x*u^2 + (eps + sqrt(x))*u + 1/4 = 0, evaluated without
    // cancellation via the product of roots (= 1/(4x)).
    const double b = eps + sq;
    const double disc = eps * (eps + 2.0 * sq);
    const double lower = (-b - std::sqrt(disc)) / (2.0 * t);
    const double upper = 1.0 / (4.0 * t * lower);
    if (strategy.kind == SelectionStrategy::Kind::boundary) return Point{upper};
    return Point{lerp(exact, upper, strategy_draw(strategy))};
}

Point select_quadratic(const Point& a, const Point& x, double eps,
                       const SelectionStrategy& strategy) {
    Point grad = x - a;
    if (eps == 0.0 || strategy.kind == SelectionStrategy::Kind::min_norm) return grad;
    Point dir = Point::zeros(x.dim());
    const double gn = norm(grad);
    if (gn > 0.0) {
        dir = (1.0 / gn) * grad;
    } else {
        dir[0] = 1.0;
    }
    const double radius = std::sqrt(2.0 * eps);
    const double t = strategy.kind == SelectionStrategy::Kind::boundary
                         ? 1.0
                         : strategy_draw(strategy);
    return grad + (t * radius) * dir;
}

Point select_abs(const Point& x, double eps, const SelectionStrategy& strategy) {
    if (x.dim() == 1) {
        const double t = x[0];
        double exact, extreme;
        if (t > 0.0) {
            exact = 1.0;
            extreme = std::max(-1.0, 1.0 - eps / t);
        } else if (t < 0.0) {
            exact = -1.0;
            extreme = std::min(1.0, -1.0 - eps / t);
        } else {
            exact = 0.0;
            extreme = 1.0;
        }
        switch (strategy.kind) {
        case SelectionStrategy::Kind::min_norm: return Point{exact};
        case SelectionStrategy::Kind::boundary: return Point{extreme};
        case SelectionStrategy::Kind::random:
            return Point{lerp(exact, extreme, strategy_draw(strategy))};
        }
    }
    if (strategy.kind != SelectionStrategy::Kind::min_norm) {
        throw UnsupportedOracleError(
            "abs: boundary/random selections are only implemented in dimension 1");
    }
    Point u = Point::zeros(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        u[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
    }
    return u;
}

Point select_indicator(const ConvexSet& set, const Point& x, double eps,
                       const SelectionStrategy& strategy) {
    const double domain_tol = 1e-12 * std::max(1.0, norm(x));
    if (!set.contains(x, domain_tol)) {
        throw DomainError("point outside domain: x = " + to_string(x));
    }
    switch (set.kind()) {
    case SetKind::singleton:
        // Every u satisfies <u, y - x> <= eps over C = {x}; report the
        // least-norm element for all strategies.
        return Point::zeros(x.dim());
    case SetKind::box: {
        if (set.dim() != 1) {
            throw UnsupportedOracleError(
                "indicator(box): selections are only implemented in dimension 1");
        }
        const double lo = set.lower()[0];
        const double hi = set.upper()[0];
        const double t = std::min(std::max(x[0], lo), hi);
        if (strategy.kind == SelectionStrategy::Kind::min_norm) return Point{0.0};
        double extreme = 0.0;
        if (t < hi) {
            extreme = eps / (hi - t);
        } else if (t > lo) {
            extreme = -eps / (t - lo);
        }
        if (strategy.kind == SelectionStrategy::Kind::boundary) return Point{extreme};
        return Point{lerp(0.0, extreme, strategy_draw(strategy))};
    }
    case SetKind::halfspace: {
        if (strategy.kind == SelectionStrategy::Kind::min_norm) return Point::zeros(x.dim());
        const Point& g = set.normal();
        const double slack = std::max(0.0, set.offset() - dot(g, x));
        const double t_max = slack > 0.0 ? eps / slack : 1.0;
        const double t = strategy.kind == SelectionStrategy::Kind::boundary
                             ? t_max
                             : t_max * strategy_draw(strategy);
        return t * g;
    }
    case SetKind::ball:
        throw UnsupportedOracleError("indicator(ball): no closed-form selection implemented");
    }
    throw UnsupportedOracleError("unknown set kind");
}

} // namespace

Point eps_subgradient(const ConvexFunctionOracle& f, const Point& x, double eps,
                      const SelectionStrategy& strategy) {
    require_finite(x, "x");
    require_eps(eps);
    if (auto d = f.dim()) require_dim(x, *d, "eps_subgradient input");
    switch (f.kind()) {
    case FunctionKind::neg_sqrt: return select_neg_sqrt(x, eps, strategy);
    case FunctionKind::quadratic: return select_quadratic(f.anchor(), x, eps, strategy);
    case FunctionKind::abs: return select_abs(x, eps, strategy);
    case FunctionKind::indicator: return select_indicator(f.set(), x, eps, strategy);
    case FunctionKind::linear: return f.anchor();
    }
    throw UnsupportedOracleError("unknown oracle kind");
}

bool check_eps_subgradient(const ConvexFunctionOracle& f, const Point& x, const Point& u,
                           double eps, std::span<const Point> probes, double tol) {
    require_finite(x, "x");
    require_finite(u, "u");
    require_eps(eps);
    if (u.dim() != x.dim()) throw DimensionMismatchError("u and x dimensions differ");
    if (probes.empty()) throw std::invalid_argument("probe set must be nonempty");
    const double domain_tol = tol * std::max(1.0, norm(x));
    if (!f.in_domain(x, domain_tol)) {
        throw DomainError("point outside domain: x = " + to_string(x));
    }
    // Borderline indicator points (projection output one rounding step past
    // the constraint surface) evaluate as on the set.
    const double fx = f.kind() == FunctionKind::indicator ? 0.0 : f.eval(x);
    for (const Point& y : probes) {
        if (y.dim() != x.dim()) throw DimensionMismatchError("probe dimension mismatch");
        const double fy = f.eval(y);
        if (fy == kInf) continue; // inequality holds automatically
        const double cross = dot(u, y - x);
        const double violation = fx + cross - fy - eps;
        const double scale =
            std::max({1.0, std::abs(fx), std::abs(fy), std::abs(cross), eps});
        if (violation > tol * scale) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Resolvents

bool has_resolvent(const ConvexFunctionOracle& f) noexcept {
    return f.kind() != FunctionKind::neg_sqrt;
}

Point resolvent(const ConvexFunctionOracle& f, double lambda, const Point& z) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive and finite");
    }
    require_finite(z, "z");
    if (auto d = f.dim()) require_dim(z, *d, "resolvent input");
    switch (f.kind()) {
    case FunctionKind::indicator:
        return f.set().project(z);
    case FunctionKind::quadratic:
        return (1.0 / (1.0 + lambda)) * (z + lambda * f.anchor());
    case FunctionKind::abs: {
        Point p = z;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            const double mag = std::max(std::abs(p[i]) - lambda, 0.0);
            p[i] = p[i] >= 0.0 ? mag : -mag;
        }
        return p;
    }
    case FunctionKind::linear:
        return z - lambda * f.anchor();
    case FunctionKind::neg_sqrt:
        throw UnsupportedResolventError("neg_sqrt has no closed-form resolvent");
    }
    throw UnsupportedOracleError("unknown oracle kind");
}

// ---------------------------------------------------------------------------
// Exact subdifferentials as coordinate boxes

std::optional<std::vector<Interval>> exact_subdifferential_box(const ConvexFunctionOracle& f,
                                                               const Point& x) {
    require_finite(x, "x");
    if (auto d = f.dim()) require_dim(x, *d, "subdifferential query");
    switch (f.kind()) {
    case FunctionKind::neg_sqrt: {
        if (x[0] < 0.0) return std::nullopt;
        if (x[0] == 0.0) return std::nullopt; // slope is unbounded at the origin
        const double g = -1.0 / (2.0 * std::sqrt(x[0]));
        return std::vector<Interval>{{g, g}};
    }
    case FunctionKind::quadratic: {
        std::vector<Interval> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) {
            const double g = x[i] - f.anchor()[i];
            out[i] = {g, g};
        }
        return out;
    }
    case FunctionKind::abs: {
        std::vector<Interval> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] > 0.0) {
                out[i] = {1.0, 1.0};
            } else if (x[i] < 0.0) {
                out[i] = {-1.0, -1.0};
            } else {
                out[i] = {-1.0, 1.0};
            }
        }
        return out;
    }
    case FunctionKind::linear: {
        std::vector<Interval> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) {
            out[i] = {f.anchor()[i], f.anchor()[i]};
        }
        return out;
    }
    case FunctionKind::indicator: {
        const ConvexSet& set = f.set();
        const double tol = 1e-12 * std::max(1.0, norm(x));
        if (!set.contains(x, tol)) return std::nullopt;
        switch (set.kind()) {
        case SetKind::singleton: {
            std::vector<Interval> out(x.dim(), Interval{-kInf, kInf});
            return out;
        }
        case SetKind::box: {
            std::vector<Interval> out(x.dim());
            for (std::size_t i = 0; i < x.dim(); ++i) {
                const double lo = set.lower()[i];
                const double hi = set.upper()[i];
                const bool at_lo = x[i] <= lo + tol;
                const bool at_hi = x[i] >= hi - tol;
                out[i] = {at_lo ? -kInf : 0.0, at_hi ? kInf : 0.0};
            }
            return out;
        }
        case SetKind::halfspace: {
            if (set.dim() != 1) {
                throw UnsupportedOracleError(
                    "indicator(halfspace): normal cone is not a coordinate box in dimension > 1");
            }
            const double g = set.normal()[0];
            const double slack = set.offset() - set.normal()[0] * x[0];
            const double btol = 1e-12 * std::max({1.0, std::abs(set.offset()), std::abs(x[0])});
            if (slack > btol) return std::vector<Interval>{{0.0, 0.0}};
            if (g > 0.0) return std::vector<Interval>{{0.0, kInf}};
            return std::vector<Interval>{{-kInf, 0.0}};
        }
        case SetKind::ball:
            throw UnsupportedOracleError(
                "indicator(ball): normal cone is not a coordinate box");
        }
        return std::nullopt;
    }
    }
    throw UnsupportedOracleError("unknown oracle kind");
}

// ---------------------------------------------------------------------------
// Sampled operator graphs

bool check_monotone_graph(const SampledOperator& op, double tol) {
    const auto& g = op.graph;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const double v = dot(g[i].second - g[j].second, g[i].first - g[j].first);
            if (v < -tol * std::max(1.0, std::abs(v))) return false;
        }
    }
    return true;
}

bool check_eps_enlargement(const SampledOperator& op, const Point& x, const Point& u,
                           double eps, double tol) {
    require_finite(x, "x");
    require_finite(u, "u");
    require_eps(eps);
    for (const auto& [y, v] : op.graph) {
        const double cross = dot(v - u, y - x);
        const double scale = std::max({1.0, std::abs(cross), eps});
        if (cross < -eps - tol * scale) return false;
    }
    return true;
}

} // namespace extsum
