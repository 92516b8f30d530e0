#pragma once

#include "qhm/domain.hpp"
#include "qhm/path.hpp"
#include "qhm/point.hpp"

#include <optional>
#include <string_view>

namespace qhm {

enum class MetricKind { quasihyperbolic, distance_ratio, hyperbolic_ball, hyperbolic_halfspace };

std::string_view to_string(MetricKind kind);

/// Distance ratio metric log(1 + |x - y| / min(d(x), d(y))).
double j_metric(const Domain& domain, const Point& x, const Point& y,
                const NormSpec& norm = NormSpec::euclidean());

/// Hyperbolic distance in a Euclidean ball, density 2 / (1 - |z|^2) after
/// rescaling the ball to the unit ball.
double hyperbolic_ball_distance(const UnitBall& ball, const Point& x, const Point& y);

/// Hyperbolic distance in a half-space, density 1 / (height above the face).
/// In a half-space this coincides with the quasihyperbolic distance.
double hyperbolic_halfspace_distance(const HalfSpace& hs, const Point& x, const Point& y);

/// Quasihyperbolic distance in R^n \ {0}: sqrt(alpha^2 + log^2(|x| / |y|)),
/// alpha the angle at the origin between x and y.
double qh_punctured_distance(const Point& x, const Point& y);

/// Angle at the origin between x and y, in [0, pi].
double angle_at_origin(const Point& x, const Point& y);

struct PuncturedGeodesic {
    PathPolyline path;
    /// False when x and y are on opposite rays (angle pi): the mirror image
    /// of the returned curve is a second geodesic.
    bool unique = true;
};

/// Sampled quasihyperbolic geodesic of R^n \ {0}: the curve r(theta) =
/// |x| exp(c theta), c = log(|y| / |x|) / alpha, in the plane of x and y.
/// Degenerates to a circular arc (|x| = |y|) or a radial segment (alpha = 0).
/// `samples` is the vertex count.
PuncturedGeodesic qh_punctured_geodesic(const Point& x, const Point& y, std::size_t samples);

/// Inversion in the unit sphere, x / |x|^2.
Point mobius_inversion(const Point& x);

/// Closed-form value of `metric` on `domain` if one is known: j on every
/// family, the quasihyperbolic metric on a once-punctured space or a
/// half-space, and the hyperbolic metric on its own model domain.
/// Returns nullopt when only a numeric value is available and throws
/// unsupported_combination for hyperbolic metrics on the wrong family.
std::optional<double> closed_form_distance(MetricKind metric, const Domain& domain, const Point& x,
                                           const Point& y);

}  // namespace qhm
