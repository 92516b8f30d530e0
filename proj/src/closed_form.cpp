#include "qhm/closed_form.hpp"

#include "qhm/error.hpp"

#include <cmath>
#include <numbers>

namespace qhm {
namespace {

void require_in(const Domain& domain, const Point& p) {
    if (!domain.contains(p)) throw Error(ErrorCode::outside_domain, "point " + p.to_string() + " is not in the domain");
}

void require_nonzero(const Point& p) {
    if (!p.is_finite()) throw Error(ErrorCode::invalid_input, "non-finite point");
    if (length(p) == 0.0) throw Error(ErrorCode::outside_domain, "the puncture itself is not in the domain");
}

// Unit vector in the plane of x and y orthogonal to x; for collinear inputs the
// lowest-index coordinate axis not parallel to x, orthogonalized.
Point in_plane_perpendicular(const Point& e1, const Point& y, bool& collinear) {
    Point perp = y - dot(y, e1) * e1;
    const double b = length(perp);
    collinear = !(b > 1e-14 * length(y));
    if (!collinear) return perp * (1.0 / b);
    for (std::size_t i = 0; i < e1.dim(); ++i) {
        if (std::abs(e1[i]) < 1.0 - 1e-12) {
            Point axis(e1.dim());
            axis[i] = 1.0;
            Point w = axis - e1[i] * e1;
            return w * (1.0 / length(w));
        }
    }
    return Point(e1.dim());  // unreachable for dim >= 2
}

}  // namespace

std::string_view to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::quasihyperbolic: return "quasihyperbolic";
        case MetricKind::distance_ratio: return "distance_ratio";
        case MetricKind::hyperbolic_ball: return "hyperbolic_ball";
        case MetricKind::hyperbolic_halfspace: return "hyperbolic_halfspace";
    }
    return "unknown";
}

double j_metric(const Domain& domain, const Point& x, const Point& y, const NormSpec& norm) {
    require_same_dim(x, y);
    const double dx = domain.boundary_distance(norm, x);
    const double dy = domain.boundary_distance(norm, y);
    if (x == y) return 0.0;
    return std::log1p(norm(x - y) / std::min(dx, dy));
}

double hyperbolic_ball_distance(const UnitBall& ball, const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_same_dim(x, ball.center);
    const Point u = (x - ball.center) * (1.0 / ball.radius);
    const Point v = (y - ball.center) * (1.0 / ball.radius);
    const double ru = length(u), rv = length(v);
    if (!(ru < 1.0) || !(rv < 1.0)) throw Error(ErrorCode::outside_domain, "point is not inside the ball");
    const double denom = std::sqrt((1.0 - ru) * (1.0 + ru) * (1.0 - rv) * (1.0 + rv));
    return 2.0 * std::asinh(distance(u, v) / denom);
}

double hyperbolic_halfspace_distance(const HalfSpace& hs, const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_same_dim(x, hs.normal);
    const double hx = dot(x, hs.normal) - hs.offset;
    const double hy = dot(y, hs.normal) - hs.offset;
    if (!(hx > 0) || !(hy > 0)) throw Error(ErrorCode::outside_domain, "point is not in the half-space");
    // arcosh(1 + |x-y|^2 / (2 hx hy)) rewritten through the half-angle identity.
    return 2.0 * std::asinh(distance(x, y) / (2.0 * std::sqrt(hx * hy)));
}

double angle_at_origin(const Point& x, const Point& y) {
    require_same_dim(x, y);
    if (x.dim() == 2) return std::abs(std::atan2(x[0] * y[1] - x[1] * y[0], x[0] * y[0] + x[1] * y[1]));
    const Point e1 = x * (1.0 / length(x));
    const double a = dot(y, e1);
    return std::atan2(length(y - a * e1), a);
}

double qh_punctured_distance(const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_nonzero(x);
    require_nonzero(y);
    const double alpha = angle_at_origin(x, y);
    const double log_ratio = std::log(length(x)) - std::log(length(y));
    return std::hypot(alpha, log_ratio);
}

PuncturedGeodesic qh_punctured_geodesic(const Point& x, const Point& y, std::size_t samples) {
    require_same_dim(x, y);
    require_nonzero(x);
    require_nonzero(y);
    if (samples < 2) throw Error(ErrorCode::invalid_input, "a geodesic needs at least two samples");
    if (x == y) return {PathPolyline{{x}}, true};

    const double rx = length(x), ry = length(y);
    const Point e1 = x * (1.0 / rx);
    bool collinear = false;
    const Point e2 = in_plane_perpendicular(e1, y, collinear);
    const double alpha = collinear ? (dot(x, y) > 0 ? 0.0 : std::numbers::pi) : angle_at_origin(x, y);
    const double log_ratio = std::log(ry / rx);

    PuncturedGeodesic out;
    out.unique = !(collinear && alpha > 0);
    out.path.vertices.reserve(samples);
    out.path.vertices.push_back(x);
    for (std::size_t i = 1; i + 1 < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double theta = alpha * t;
        const double r = rx * std::exp(t * log_ratio);
        out.path.vertices.push_back(r * (std::cos(theta) * e1 + std::sin(theta) * e2));
    }
    out.path.vertices.push_back(y);
    return out;
}

Point mobius_inversion(const Point& x) {
    const double r2 = dot(x, x);
    if (!(r2 > 0) || !x.is_finite()) throw Error(ErrorCode::invalid_input, "inversion is undefined at the origin");
    return x * (1.0 / r2);
}

std::optional<double> closed_form_distance(MetricKind metric, const Domain& domain, const Point& x,
                                           const Point& y) {
    switch (metric) {
        case MetricKind::distance_ratio: return j_metric(domain, x, y);
        case MetricKind::hyperbolic_ball: {
            const auto* ball = std::get_if<UnitBall>(&domain.variant());
            if (!ball) throw Error(ErrorCode::unsupported_combination, "hyperbolic_ball needs a unit_ball domain");
            return hyperbolic_ball_distance(*ball, x, y);
        }
        case MetricKind::hyperbolic_halfspace: {
            const auto* hs = std::get_if<HalfSpace>(&domain.variant());
            if (!hs) throw Error(ErrorCode::unsupported_combination, "hyperbolic_halfspace needs a half_space domain");
            return hyperbolic_halfspace_distance(*hs, x, y);
        }
        case MetricKind::quasihyperbolic: {
            if (const auto* hs = std::get_if<HalfSpace>(&domain.variant())) {
                return hyperbolic_halfspace_distance(*hs, x, y);
            }
            if (const auto* s = std::get_if<PuncturedSpace>(&domain.variant()); s && s->punctures.size() == 1) {
                require_in(domain, x);
                require_in(domain, y);
                const Point& p = s->punctures.front();
                return qh_punctured_distance(x - p, y - p);
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace qhm
