#pragma once

#include "qhm/domain.hpp"
#include "qhm/norm.hpp"
#include "qhm/point.hpp"

#include <vector>

namespace qhm {

/// Ordered vertex list of a rectifiable curve. A single vertex is the
/// trivial path joining a point to itself.
struct PathPolyline {
    std::vector<Point> vertices;

    std::size_t size() const noexcept { return vertices.size(); }
    const Point& front() const { return vertices.front(); }
    const Point& back() const { return vertices.back(); }

    /// Length measured in `norm` (not the quasihyperbolic length).
    double norm_length(const NormSpec& norm = NormSpec::euclidean()) const;
};

/// Throws invalid_input for empty paths or repeated consecutive vertices and
/// path_exits_domain when a vertex or segment leaves the domain.
void validate_path(const Domain& domain, const PathPolyline& path);

}  // namespace qhm
