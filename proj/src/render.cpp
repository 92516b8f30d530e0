#include "qhm/render.hpp"

#include "qhm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qhm {
namespace {

constexpr double kView = 800.0;

void require_planar(const Point& p) {
    if (p.dim() != 2) throw Error(ErrorCode::invalid_input, "SVG output needs 2D points");
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render_svg(const SvgScene& scene) {
    double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double hi[2] = {-lo[0], -lo[1]};
    auto include = [&](const Point& p) {
        require_planar(p);
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    };
    for (const auto& line : scene.polylines) std::for_each(line.begin(), line.end(), include);
    std::for_each(scene.punctures.begin(), scene.punctures.end(), include);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
    if (lo[0] <= hi[0]) {
        double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
        if (span <= 0.0) span = 1.0;
        const double scale = 0.9 * kView / span;
        const double cx = 0.5 * (lo[0] + hi[0]), cy = 0.5 * (lo[1] + hi[1]);
        auto sx = [&](double x) { return fixed(kView / 2 + (x - cx) * scale); };
        auto sy = [&](double y) { return fixed(kView / 2 - (y - cy) * scale); };

        for (const auto& line : scene.polylines) {
            if (line.empty()) continue;
            out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"";
            for (std::size_t i = 0; i < line.size(); ++i) {
                out << (i == 0 ? "M" : " L") << sx(line[i][0]) << ',' << sy(line[i][1]);
            }
            out << "\"/>\n";
        }
        for (const auto& p : scene.punctures) {
            const double x = kView / 2 + (p[0] - cx) * scale, y = kView / 2 - (p[1] - cy) * scale;
            out << "<path stroke=\"red\" stroke-width=\"1.5\" d=\"M" << fixed(x - 6) << ',' << fixed(y - 6) << " L"
                << fixed(x + 6) << ',' << fixed(y + 6) << " M" << fixed(x - 6) << ',' << fixed(y + 6) << " L"
                << fixed(x + 6) << ',' << fixed(y - 6) << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write_path_csv(std::ostream& out, const PathPolyline& path) {
    const std::size_t dim = path.size() ? path.front().dim() : 0;
    for (std::size_t k = 0; k < dim; ++k) out << (k ? "," : "") << "x" << k;
    out << '\n';
    for (const auto& v : path.vertices) {
        for (std::size_t k = 0; k < dim; ++k) out << (k ? "," : "") << format_number(v[k]);
        out << '\n';
    }
}

void write_field_csv(std::ostream& out, const ScalarField& field) {
    out << "i,j,x,y,value\n";
    const auto& g = field.grid;
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const Point p = g.node(i, j);
            out << i << ',' << j << ',' << format_number(p[0]) << ',' << format_number(p[1]) << ','
                << format_number(field.at(i, j)) << '\n';
        }
    }
}

void write_pairs_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& rows) {
    out << x_name << ',' << y_name << '\n';
    for (const auto& [x, y] : rows) out << format_number(x) << ',' << format_number(y) << '\n';
}

}  // namespace qhm
