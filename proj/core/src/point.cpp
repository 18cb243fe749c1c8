#include "extsum/point.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "extsum/errors.hpp"

namespace extsum {

namespace {

void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("dimension mismatch: " + std::to_string(a.dim()) +
                                     " vs " + std::to_string(b.dim()));
    }
}

} // namespace

bool Point::all_finite() const noexcept {
    for (double c : coords_) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

Point& Point::operator+=(const Point& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

Point& Point::operator-=(const Point& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

Point& Point::operator*=(double s) noexcept {
    for (double& c : coords_) c *= s;
    return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(double s, Point a) { return a *= s; }
Point operator-(Point a) { return a *= -1.0; }

double dot(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double distance(const Point& a, const Point& b) { return norm(a - b); }

bool bit_equal(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) {
            return false;
        }
    }
    return true;
}

std::string to_string(const Point& p) {
    std::ostringstream out;
    if (p.dim() == 1) {
        out << p[0];
        return out.str();
    }
    out << "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i > 0) out << ", ";
        out << p[i];
    }
    out << ")";
    return out.str();
}

} // namespace extsum
