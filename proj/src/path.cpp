#include "qhm/path.hpp"

#include "qhm/error.hpp"

namespace qhm {

double PathPolyline::norm_length(const NormSpec& norm) const {
    double total = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) total += norm(vertices[i] - vertices[i - 1]);
    return total;
}

void validate_path(const Domain& domain, const PathPolyline& path) {
    if (path.vertices.empty()) throw Error(ErrorCode::invalid_input, "path has no vertices");
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Point& v = path.vertices[i];
        if (v.dim() != domain.dim()) throw Error(ErrorCode::invalid_input, "path vertex has wrong dimension");
        if (!domain.contains(v)) {
            throw Error(ErrorCode::path_exits_domain, "vertex " + std::to_string(i) + " " + v.to_string() +
                                                          " is outside the domain");
        }
        if (i == 0) continue;
        const Point& u = path.vertices[i - 1];
        if (u == v) {
            throw Error(ErrorCode::invalid_input, "consecutive vertices " + std::to_string(i - 1) + " and " +
                                                      std::to_string(i) + " coincide");
        }
        if (!domain.segment_inside(u, v)) {
            throw Error(ErrorCode::path_exits_domain, "segment " + std::to_string(i - 1) + " leaves the domain");
        }
    }
}

}  // namespace qhm
