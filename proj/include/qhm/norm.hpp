#pragma once

#include "qhm/point.hpp"

#include <limits>
#include <span>
#include <string>

namespace qhm {

/// A finite-dimensional norm: Euclidean or an l^p norm with 1 <= p <= inf.
class NormSpec {
public:
    enum class Kind { euclidean, p_norm };

    static NormSpec euclidean() { return NormSpec(Kind::euclidean, 2.0); }
    /// Throws invalid_input unless p >= 1 (p = infinity selects the sup-norm).
    static NormSpec p_norm(double p);

    Kind kind() const noexcept { return kind_; }
    /// Exponent; 2 for the Euclidean norm.
    double p() const noexcept { return p_; }
    bool is_euclidean() const noexcept;

    double operator()(std::span<const double> v) const;
    double operator()(const Point& v) const { return (*this)(v.coords()); }

    std::string describe() const;

    friend bool operator==(const NormSpec&, const NormSpec&) = default;

private:
    NormSpec(Kind kind, double p) : kind_(kind), p_(p) {}

    Kind kind_;
    double p_;
};

}  // namespace qhm
