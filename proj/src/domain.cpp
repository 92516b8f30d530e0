#include "qhm/domain.hpp"

#include "qhm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhm {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double cross2(const Point& a, const Point& b) noexcept { return a[0] * b[1] - a[1] * b[0]; }

void require_finite(const Point& p, const char* what) {
    if (!p.is_finite()) throw Error(ErrorCode::invalid_input, std::string(what) + " has non-finite coordinates");
}

void require_unit(const Point& v, const char* what) {
    if (std::abs(length(v) - 1.0) > 1e-9) {
        throw Error(ErrorCode::invalid_input, std::string(what) + " must be a unit vector");
    }
}

void require_min_dim(std::size_t dim) {
    if (dim < 2) throw Error(ErrorCode::invalid_input, "domains live in dimension >= 2");
}

double ray_distance(const SlitPlane& s, const Point& x) noexcept {
    const Point rel = x - s.apex;
    const double t = std::max(0.0, dot(rel, s.direction));
    return length(rel - t * s.direction);
}

bool segment_hits_ray(const SlitPlane& s, const Point& a, const Point& b) noexcept {
    const Point ra = a - s.apex;
    const Point rb = b - s.apex;
    const double ua = dot(ra, s.direction), ub = dot(rb, s.direction);
    const double va = cross2(s.direction, ra), vb = cross2(s.direction, rb);
    if ((va > 0 && vb > 0) || (va < 0 && vb < 0)) return false;
    if (va == 0 && vb == 0) return std::max(ua, ub) >= 0;
    const double t = va / (va - vb);
    return ua + t * (ub - ua) >= 0;
}

}  // namespace

double point_segment_distance(const Point& p, const Point& a, const Point& b) noexcept {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, lerp(a, b, t));
}

Domain Domain::half_space(Point normal, double offset) {
    require_min_dim(normal.dim());
    require_finite(normal, "half-space normal");
    require_unit(normal, "half-space normal");
    if (!std::isfinite(offset)) throw Error(ErrorCode::invalid_input, "half-space offset must be finite");
    const auto dim = normal.dim();
    return Domain(HalfSpace{std::move(normal), offset}, dim);
}

Domain Domain::punctured(std::vector<Point> punctures) {
    if (punctures.empty()) throw Error(ErrorCode::invalid_input, "punctured space needs at least one puncture");
    const auto dim = punctures.front().dim();
    require_min_dim(dim);
    for (const auto& p : punctures) {
        require_same_dim(p, punctures.front());
        require_finite(p, "puncture");
    }
    return Domain(PuncturedSpace{std::move(punctures)}, dim);
}

Domain Domain::unit_ball(Point center, double radius) {
    require_min_dim(center.dim());
    require_finite(center, "ball center");
    if (!(radius > 0) || !std::isfinite(radius)) throw Error(ErrorCode::invalid_input, "ball radius must be positive");
    const auto dim = center.dim();
    return Domain(UnitBall{std::move(center), radius}, dim);
}

Domain Domain::slit_plane(Point apex, Point direction) {
    if (apex.dim() != 2 || direction.dim() != 2) throw Error(ErrorCode::invalid_input, "slit plane is 2D only");
    require_finite(apex, "slit apex");
    require_finite(direction, "slit direction");
    require_unit(direction, "slit direction");
    return Domain(SlitPlane{std::move(apex), std::move(direction)}, 2);
}

Domain Domain::convex_polygon(std::vector<Point> vertices) {
    if (vertices.size() < 3) throw Error(ErrorCode::invalid_input, "polygon needs at least three vertices");
    for (const auto& v : vertices) {
        if (v.dim() != 2) throw Error(ErrorCode::invalid_input, "convex polygon is 2D only");
        require_finite(v, "polygon vertex");
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = vertices[(i + 1) % n] - vertices[i];
        const Point e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        if (!(cross2(e0, e1) > 0)) {
            throw Error(ErrorCode::invalid_input,
                        "polygon vertices must be counter-clockwise and in strictly convex position");
        }
    }
    return Domain(ConvexPolygon{std::move(vertices)}, 2);
}

std::string Domain::kind_name() const {
    return std::visit(overloaded{
                          [](const HalfSpace&) { return std::string("half_space"); },
                          [](const PuncturedSpace&) { return std::string("punctured"); },
                          [](const UnitBall&) { return std::string("unit_ball"); },
                          [](const SlitPlane&) { return std::string("slit_plane"); },
                          [](const ConvexPolygon&) { return std::string("convex_polygon"); },
                      },
                      v_);
}

bool Domain::contains(const Point& x) const {
    if (x.dim() != dim_) {
        throw Error(ErrorCode::invalid_input, "point dimension " + std::to_string(x.dim()) +
                                                  " does not match domain dimension " + std::to_string(dim_));
    }
    if (!x.is_finite()) return false;
    return std::visit(overloaded{
                          [&](const HalfSpace& h) { return dot(x, h.normal) - h.offset > 0; },
                          [&](const PuncturedSpace& s) {
                              return std::none_of(s.punctures.begin(), s.punctures.end(),
                                                  [&](const Point& p) { return p == x; });
                          },
                          [&](const UnitBall& b) { return distance(x, b.center) < b.radius; },
                          [&](const SlitPlane& s) { return ray_distance(s, x) > 0; },
                          [&](const ConvexPolygon& poly) {
                              const auto& v = poly.vertices;
                              for (std::size_t i = 0; i < v.size(); ++i) {
                                  if (!(cross2(v[(i + 1) % v.size()] - v[i], x - v[i]) > 0)) return false;
                              }
                              return true;
                          },
                      },
                      v_);
}

void Domain::require_norm_supported(const NormSpec& norm) const {
    if (!norm.is_euclidean() && !std::holds_alternative<PuncturedSpace>(v_)) {
        throw Error(ErrorCode::unsupported_combination,
                    "boundary distance for " + kind_name() + " is only available in the Euclidean norm");
    }
}

double Domain::boundary_distance_or_zero(const NormSpec& norm, const Point& x) const {
    if (!contains(x)) return 0.0;
    return std::visit(overloaded{
                          [&](const HalfSpace& h) { return dot(x, h.normal) - h.offset; },
                          [&](const PuncturedSpace& s) {
                              double best = std::numeric_limits<double>::infinity();
                              for (const auto& p : s.punctures) {
                                  best = std::min(best, norm.is_euclidean() ? distance(x, p) : norm(x - p));
                              }
                              return best;
                          },
                          [&](const UnitBall& b) { return b.radius - distance(x, b.center); },
                          [&](const SlitPlane& s) { return ray_distance(s, x); },
                          [&](const ConvexPolygon& poly) {
                              const auto& v = poly.vertices;
                              double best = std::numeric_limits<double>::infinity();
                              for (std::size_t i = 0; i < v.size(); ++i) {
                                  best = std::min(best, point_segment_distance(x, v[i], v[(i + 1) % v.size()]));
                              }
                              return best;
                          },
                      },
                      v_);
}

double Domain::boundary_distance(const NormSpec& norm, const Point& x) const {
    require_norm_supported(norm);
    if (!contains(x)) throw Error(ErrorCode::outside_domain, "point " + x.to_string() + " is not in the domain");
    return boundary_distance_or_zero(norm, x);
}

bool Domain::segment_inside(const Point& a, const Point& b) const {
    if (!contains(a) || !contains(b)) return false;
    return std::visit(overloaded{
                          [](const HalfSpace&) { return true; },
                          [&](const PuncturedSpace& s) {
                              return std::none_of(s.punctures.begin(), s.punctures.end(), [&](const Point& p) {
                                  // Near-misses at rounding level count as hits.
                                  const double scale = distance(a, p) + distance(b, p);
                                  return point_segment_distance(p, a, b) <= 1e-14 * scale;
                              });
                          },
                          [](const UnitBall&) { return true; },
                          [&](const SlitPlane& s) { return !segment_hits_ray(s, a, b); },
                          [](const ConvexPolygon&) { return true; },
                      },
                      v_);
}

bool Domain::bounded() const noexcept {
    return std::holds_alternative<UnitBall>(v_) || std::holds_alternative<ConvexPolygon>(v_);
}

Box Domain::bounding_box() const {
    if (const auto* b = std::get_if<UnitBall>(&v_)) {
        Point lo = b->center, hi = b->center;
        for (std::size_t i = 0; i < dim_; ++i) {
            lo[i] -= b->radius;
            hi[i] += b->radius;
        }
        return {lo, hi};
    }
    if (const auto* poly = std::get_if<ConvexPolygon>(&v_)) {
        Point lo = poly->vertices.front(), hi = lo;
        for (const auto& v : poly->vertices) {
            for (std::size_t i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], v[i]);
                hi[i] = std::max(hi[i], v[i]);
            }
        }
        return {lo, hi};
    }
    throw Error(ErrorCode::invalid_input, kind_name() + " is unbounded");
}

}  // namespace qhm
