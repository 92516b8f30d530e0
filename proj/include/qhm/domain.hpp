#pragma once

#include "qhm/norm.hpp"
#include "qhm/point.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qhm {

/// {x : <x, normal> > offset}
struct HalfSpace {
    Point normal;  // unit length
    double offset = 0.0;
    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

/// R^n minus finitely many points.
struct PuncturedSpace {
    std::vector<Point> punctures;
    friend bool operator==(const PuncturedSpace&, const PuncturedSpace&) = default;
};

/// Open Euclidean ball.
struct UnitBall {
    Point center;
    double radius = 1.0;
    friend bool operator==(const UnitBall&, const UnitBall&) = default;
};

/// R^2 minus the closed ray {apex + t direction : t >= 0}.
struct SlitPlane {
    Point apex;
    Point direction;  // unit length
    friend bool operator==(const SlitPlane&, const SlitPlane&) = default;
};

/// Interior of a strictly convex polygon, vertices counter-clockwise.
struct ConvexPolygon {
    std::vector<Point> vertices;
    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

/// Axis-aligned box, used for bounded domains and grid windows.
struct Box {
    Point lo, hi;
};

/// A proper subdomain of R^n from one of five parametric families, with exact
/// membership and boundary-distance oracles. Construct through the factory
/// functions, which validate the family invariants.
class Domain {
public:
    using Variant = std::variant<HalfSpace, PuncturedSpace, UnitBall, SlitPlane, ConvexPolygon>;

    static Domain half_space(Point normal, double offset);
    static Domain punctured(std::vector<Point> punctures);
    static Domain unit_ball(Point center, double radius);
    static Domain slit_plane(Point apex, Point direction);
    static Domain convex_polygon(std::vector<Point> vertices);

    const Variant& variant() const noexcept { return v_; }
    std::size_t dim() const noexcept { return dim_; }
    std::string kind_name() const;

    /// Strict interior test. Throws invalid_input on dimension mismatch.
    bool contains(const Point& x) const;

    /// Distance from x to the boundary in the given norm. General p-norms are
    /// only accepted for punctured spaces; other families need the Euclidean
    /// norm (unsupported_combination otherwise). Throws outside_domain if x is
    /// not in the domain.
    double boundary_distance(const NormSpec& norm, const Point& x) const;
    double boundary_distance(const Point& x) const { return boundary_distance(NormSpec::euclidean(), x); }

    /// Same as boundary_distance but returns 0 instead of throwing for points
    /// outside (or on the boundary of) the domain. Used by the solvers on hot
    /// paths where the caller handles the zero.
    double boundary_distance_or_zero(const NormSpec& norm, const Point& x) const;

    /// True iff the closed segment [a, b] lies in the domain.
    bool segment_inside(const Point& a, const Point& b) const;

    /// Bounding box for bounded families (ball, polygon); nullopt-like flag otherwise.
    bool bounded() const noexcept;
    Box bounding_box() const;

    /// Throws unsupported_combination if boundary distances in `norm` are not
    /// available for this family.
    void require_norm_supported(const NormSpec& norm) const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Domain(Variant v, std::size_t dim) : v_(std::move(v)), dim_(dim) {}

    Variant v_;
    std::size_t dim_;
};

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(const Point& p, const Point& a, const Point& b) noexcept;

}  // namespace qhm
