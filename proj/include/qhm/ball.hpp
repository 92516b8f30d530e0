#pragma once

#include "qhm/closed_form.hpp"
#include "qhm/domain.hpp"
#include "qhm/point.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qhm {

/// Rectangular 2D grid: node (i, j) sits at origin + cell * (i, j).
struct GridSpec {
    Point origin;
    double cell = 0.0;
    std::size_t nx = 0, ny = 0;

    Point node(std::size_t i, std::size_t j) const { return Point{origin[0] + cell * i, origin[1] + cell * j}; }
};

/// Metric distance from `center` sampled on a grid. +infinity marks nodes
/// outside the domain (or unreachable).
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;  // row-major in i: values[j * nx + i]
    Point center;
    MetricKind metric = MetricKind::distance_ratio;
    /// True when node values are closed-form; false for lattice shortest-path
    /// upper bounds.
    bool exact = true;

    double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
    /// Bilinear interpolation; +infinity if any surrounding node is.
    double interpolate(const Point& p) const;
    double max_finite() const;
};

struct FieldOptions {
    std::size_t stencil_radius = 3;
    std::size_t quadrature_points = 4;
};

/// Samples m(center, node). Closed forms are used where they exist; otherwise
/// single-source lattice shortest paths (quasihyperbolic metric only).
ScalarField distance_field(const Domain& domain, MetricKind metric, const Point& center, const GridSpec& grid,
                           const FieldOptions& opts = {});

/// Radius of a Euclidean disk about `center` containing the ball of radius r
/// for every supported metric: d(center) (e^r - 1).
double ball_window_radius(const Domain& domain, const Point& center, double r);

/// Square grid of about `cells` cells per side covering the ball window (clipped
/// to the domain's bounding box when it is bounded) with a two-cell margin.
GridSpec ball_grid(const Domain& domain, const Point& center, double r, std::size_t cells);

using Polyline2 = std::vector<Point>;

/// Marching-squares contours of {value = r}. Each polyline is closed (first
/// vertex repeated at the end) and oriented with the ball on its left, so
/// outer boundaries run counter-clockwise and hole boundaries clockwise.
std::vector<Polyline2> trace_ball_boundary(const ScalarField& field, double r);

/// Signed area of a closed polyline (positive when counter-clockwise).
double signed_area(const Polyline2& loop);

/// Number of 4-connected components of the grid nodes with value < r.
std::size_t count_components(const ScalarField& field, double r);

enum class ShapeProperty { convex, starlike, close_to_convex, connected };
enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(ShapeProperty p);
std::string_view to_string(Verdict v);

/// Concrete evidence behind a failed (or inconclusive) verdict: the segment or
/// ray [a, b] and the offending point `at`, whose metric distance from the
/// center exceeds r by `excess`.
struct Witness {
    Point a, b, at;
    double excess = 0.0;
    std::string description;
};

struct ShapeReport {
    ShapeProperty property = ShapeProperty::convex;
    Verdict verdict = Verdict::inconclusive;
    double radius = 0.0;
    double tolerance = 0.0;
    /// Largest sampled value of m(center, z) - r over the checked set
    /// (negative when every sample is strictly inside).
    double max_excess = 0.0;
    std::optional<Witness> witness;
    bool witness_reverified = false;
    std::size_t boundary_samples = 0;
    std::size_t evaluations = 0;
    bool exact_metric = true;
    std::string note;
};

struct ShapeBudget {
    /// Rays cast from the center to collect boundary points.
    std::size_t boundary_samples = 360;
    /// Rays for the starlikeness test, which is linear in the sample count and
    /// needs a finer angular resolution to catch thin non-star regions.
    std::size_t star_rays = 2880;
    /// Candidate directions for the close-to-convexity certificate.
    std::size_t directions = 180;
    /// Smallest step along a scan, as a fraction of the local boundary distance.
    double step_fraction = 0.02;
    /// Largest step along a scan: window radius / window_steps.
    std::size_t window_steps = 200;
    /// Cells per side of the grid used for lattice (numeric) fields.
    std::size_t field_cells = 200;
    /// Tolerance for numeric fields, relative to r.
    double numeric_rel_tolerance = 0.02;
    /// Tolerance for closed-form metrics, relative to max(1, r).
    double exact_tolerance = 1e-9;

    /// Twice the samples, half the steps and half the field cell.
    ShapeBudget refined() const;
};

/// Pointwise evaluator of z -> m(center, z): closed form when available,
/// interpolation of a lattice field otherwise.
class BallEvaluator {
public:
    BallEvaluator(const Domain& domain, MetricKind metric, const Point& center, double r, const ShapeBudget& budget);

    struct Probe {
        double value;  // m(center, z), +infinity outside the domain
        double d;      // Euclidean boundary distance, 0 outside the domain
    };
    Probe operator()(const Point& z) const;

    bool exact() const noexcept { return !field_.has_value(); }
    /// |grad m| <= lipschitz() / d(z).
    double lipschitz() const noexcept { return lipschitz_; }
    double window_radius() const noexcept { return window_; }
    const Point& center() const noexcept { return center_; }
    const Domain& domain() const noexcept { return domain_; }
    const std::optional<ScalarField>& field() const noexcept { return field_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    const Domain& domain_;
    MetricKind metric_;
    Point center_;
    double center_d_ = 0.0;
    double lipschitz_ = 1.0;
    double window_ = 0.0;
    bool halfspace_ = false;
    std::optional<ScalarField> field_;
    mutable std::size_t evaluations_ = 0;
};

/// Every sampled boundary pair's connecting segment stays in the ball.
ShapeReport test_convex(const Domain& domain, MetricKind metric, const Point& center, double r,
                        const ShapeBudget& budget = {});

/// Every segment from the center to a sampled boundary point stays in the ball.
ShapeReport test_starlike(const Domain& domain, MetricKind metric, const Point& center, double r,
                          const ShapeBudget& budget = {});

/// Sufficient test for close-to-convexity (2D): passes when the ball is
/// starlike or when some direction u makes every line parallel to u meet the
/// ball in one interval (the complement is then covered by disjoint half-lines
/// parallel to u). Fails only when a complement point is enclosed by the ball
/// in every sampled direction; otherwise the verdict is inconclusive.
ShapeReport test_close_to_convex(const Domain& domain, MetricKind metric, const Point& center, double r,
                                 const ShapeBudget& budget = {});

/// Connectedness from the flood-fill component count of the ball's grid field.
ShapeReport test_connected(const Domain& domain, MetricKind metric, const Point& center, double r,
                           const ShapeBudget& budget = {});

/// Runs test_starlike for each radius of the ladder; the domain must be
/// starlike with respect to the center (convex polygon, ball or half-space).
ShapeReport test_starlike_domain_inheritance(const Domain& domain, MetricKind metric, const Point& center,
                                             const ShapeBudget& budget = {},
                                             const std::vector<double>& radii = {0.5, 1, 2, 4, 8});

}  // namespace qhm
