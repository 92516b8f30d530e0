#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace qhm {

/// Largest ambient dimension supported. Points are stored inline so the hot
/// loops of the solvers never allocate.
inline constexpr std::size_t kMaxDim = 8;

/// A point (or vector) in R^n with runtime dimension n <= kMaxDim.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    std::size_t dim() const noexcept { return dim_; }
    double operator[](std::size_t i) const noexcept { return c_[i]; }
    double& operator[](std::size_t i) noexcept { return c_[i]; }

    std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }
    std::span<double> coords() noexcept { return {c_.data(), dim_}; }

    bool is_finite() const noexcept;

    Point& operator+=(const Point& o) noexcept;
    Point& operator-=(const Point& o) noexcept;
    Point& operator*=(double s) noexcept;

    friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
    friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
    friend Point operator*(Point a, double s) noexcept { return a *= s; }
    friend Point operator*(double s, Point a) noexcept { return a *= s; }
    friend Point operator/(Point a, double s) noexcept { return a *= 1.0 / s; }
    friend Point operator-(Point a) noexcept { return a *= -1.0; }

    friend bool operator==(const Point& a, const Point& b) noexcept;

    std::string to_string() const;

private:
    std::array<double, kMaxDim> c_{};
    std::size_t dim_ = 0;
};

double dot(const Point& a, const Point& b) noexcept;
/// Euclidean length.
double length(const Point& v) noexcept;
double distance(const Point& a, const Point& b) noexcept;
/// a + t (b - a)
Point lerp(const Point& a, const Point& b, double t) noexcept;

/// Throws invalid_input unless both points have the same dimension.
void require_same_dim(const Point& a, const Point& b);

}  // namespace qhm
