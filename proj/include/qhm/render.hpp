#pragma once

#include "qhm/ball.hpp"
#include "qhm/path.hpp"
#include "qhm/point.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qhm {

struct SvgScene {
    std::vector<std::vector<Point>> polylines;
    /// Drawn as small crosses.
    std::vector<Point> punctures;
};

/// Standalone SVG on a fixed 800x800 viewBox fitted to the data bounding box
/// with a 5% margin, y axis pointing up. One path element per polyline.
/// Throws invalid_input for non-planar data.
std::string render_svg(const SvgScene& scene);

/// CSV writers: a header row, then one record per line.
void write_path_csv(std::ostream& out, const PathPolyline& path);
void write_field_csv(std::ostream& out, const ScalarField& field);
void write_pairs_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& rows);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace qhm
