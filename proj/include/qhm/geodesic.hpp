#pragma once

#include "qhm/domain.hpp"
#include "qhm/norm.hpp"
#include "qhm/path.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace qhm {

struct SolverOptions {
    /// Grid cell as a fraction of min(d(x), d(y)).
    double grid_resolution = 0.25;
    std::size_t quadrature_points_per_segment = 8;
    /// Iterations per refinement round; rounds repeat until the relative
    /// improvement of a round drops below target_rel_error / 10.
    std::size_t refine_iterations = 24;
    double target_rel_error = 1e-2;
    /// Upper bound on grid nodes; the cell grows when the box needs more.
    std::size_t max_grid_nodes = 40000;
    /// Box padding as a multiple of max(d(x), d(y)).
    double box_padding = 3.0;
    std::size_t max_box_enlargements = 6;
    std::size_t max_refine_rounds = 60;
    std::size_t max_path_vertices = 160;

    /// Throws invalid_input if any field is out of range.
    void validate() const;
};

/// Quasihyperbolic length: the integral of |dz| / d(z) along the path, with
/// |dz| and d measured in `norm`. Segments are integrated by Gauss-Legendre on
/// pieces over which d varies by at most a factor of two.
double qh_length(const Domain& domain, const NormSpec& norm, const PathPolyline& path,
                 std::size_t quadrature_points = 8);

/// Quasihyperbolic length of the single segment [a, b]; throws
/// path_exits_domain if the segment leaves the domain.
double qh_segment_length(const Domain& domain, const NormSpec& norm, const Point& a, const Point& b,
                         std::size_t quadrature_points = 8);

struct NumericDistance {
    double value = 0.0;  // upper bound on the true distance
    PathPolyline geodesic;
    double grid_value = 0.0;  // length of the grid shortest path before refinement
    std::size_t grid_nodes = 0;
    std::size_t box_enlargements = 0;
};

/// Numeric quasihyperbolic distance: grid shortest path followed by
/// variational refinement of the polyline.
NumericDistance qh_distance_numeric(const Domain& domain, const NormSpec& norm, const Point& x, const Point& y,
                                    const SolverOptions& opts = {});

/// Shortens a path by splitting its longest (quasihyperbolic) segment and
/// pattern-searching interior vertex positions, once per iteration. Endpoints
/// are fixed; the result is never longer than the input.
PathPolyline refine_path(const Domain& domain, const NormSpec& norm, const PathPolyline& path,
                         std::size_t iterations, std::size_t quadrature_points = 8,
                         std::size_t max_vertices = 160);

struct UniformityRatio {
    double sup_ratio = 0.0;
    std::size_t argmax = 0;  // index into the pair list
    std::pair<Point, Point> pair;
};

/// max over pairs of k_numeric / j; pairs with j = 0 are skipped. A lower
/// bound on the uniformity constant of the domain.
UniformityRatio uniformity_ratio(const Domain& domain, const std::vector<std::pair<Point, Point>>& pairs,
                                 const SolverOptions& opts = {});

/// Rectangular lattice of points lo + cell * (i_0, ..., i_{n-1}).
struct Lattice {
    Point lo;
    double cell = 0.0;
    std::vector<std::size_t> counts;

    std::size_t size() const;
    Point point(std::size_t index) const;
};

/// Single-source shortest-path distances from `source` to every lattice node,
/// edges weighted by quasihyperbolic segment length. Nodes outside the domain
/// or unreachable are +infinity. `stencil_radius` r connects every pair of
/// nodes whose offset is a primitive integer vector with max-norm <= r.
std::vector<double> lattice_distances(const Domain& domain, const NormSpec& norm, const Lattice& lattice,
                                      const Point& source, std::size_t stencil_radius,
                                      std::size_t quadrature_points);

}  // namespace qhm
