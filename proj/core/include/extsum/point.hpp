#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace extsum {

// Vector in R^d with the Euclidean inner product. Value type, d >= 1.
// Arithmetic between points of different dimension throws.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

    static Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    bool all_finite() const noexcept;

    Point& operator+=(const Point& rhs);
    Point& operator-=(const Point& rhs);
    Point& operator*=(double s) noexcept;

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(double s, Point a);
Point operator-(Point a);

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

// Two points with the same dimension and identical bit patterns per
// coordinate. Stricter than operator== (distinguishes -0.0 from 0.0).
bool bit_equal(const Point& a, const Point& b);

// "3" for d = 1, "(3, 4)" otherwise; used in error messages and summaries.
std::string to_string(const Point& p);

} // namespace extsum
