#include "qhm/point.hpp"

#include "qhm/error.hpp"

#include <algorithm>
#include <sstream>

namespace qhm {

Point::Point(std::size_t dim) : dim_(dim) {
    if (dim > kMaxDim) {
        throw Error(ErrorCode::invalid_input, "dimension " + std::to_string(dim) + " exceeds supported maximum");
    }
}

Point::Point(std::initializer_list<double> coords) : Point(coords.size()) {
    std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const double> coords) : Point(coords.size()) {
    std::copy(coords.begin(), coords.end(), c_.begin());
}

bool Point::is_finite() const noexcept {
    return std::all_of(c_.begin(), c_.begin() + dim_, [](double v) { return std::isfinite(v); });
}

Point& Point::operator+=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
}

Point& Point::operator-=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
}

Point& Point::operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
}

bool operator==(const Point& a, const Point& b) noexcept {
    return a.dim_ == b.dim_ && std::equal(a.c_.begin(), a.c_.begin() + a.dim_, b.c_.begin());
}

std::string Point::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < dim_; ++i) os << (i ? ", " : "") << c_[i];
    os << ')';
    return os.str();
}

double dot(const Point& a, const Point& b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double length(const Point& v) noexcept {
    if (v.dim() == 2) return std::hypot(v[0], v[1]);
    return std::sqrt(dot(v, v));
}

double distance(const Point& a, const Point& b) noexcept { return length(a - b); }

Point lerp(const Point& a, const Point& b, double t) noexcept {
    Point r = a;
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::invalid_input, "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                                  std::to_string(b.dim()));
    }
}

}  // namespace qhm
