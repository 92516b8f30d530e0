#include "qhm/moduli.hpp"

#include "qhm/domain.hpp"
#include "qhm/error.hpp"
#include "qhm/geodesic.hpp"
#include "qhm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qhm {
namespace {

constexpr std::size_t kGrid = 721;
constexpr double kPi = std::numbers::pi;

/// Solves |x - unit(theta + psi)| = eps for psi in (0, pi] and returns the pair.
std::pair<Point, Point> convexity_pair(const NormSpec& norm, double theta, double eps) {
    const Point x = unit_sphere_point(norm, theta);
    if (eps >= 2.0) return {x, -x};
    double lo = 0.0, hi = kPi;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm(x - unit_sphere_point(norm, theta + mid)) < eps) lo = mid;
        else hi = mid;
    }
    return {x, unit_sphere_point(norm, theta + 0.5 * (lo + hi))};
}

double convexity_gap(const NormSpec& norm, const std::pair<Point, Point>& xy) {
    return 1.0 - norm(xy.first + xy.second) / 2.0;
}

double smoothness_gain(const NormSpec& norm, const Point& x, const Point& y) {
    return (norm(x + y) + norm(x - y)) / 2.0 - 1.0;
}

}  // namespace

Point unit_sphere_point(const NormSpec& norm, double theta) {
    const Point u{std::cos(theta), std::sin(theta)};
    return u / norm(u);
}

ModulusEstimate modulus_of_convexity(const NormSpec& norm, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0) throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 2]");
    const double h = kPi / static_cast<double>(kGrid - 1);
    auto value_at = [&](double theta) { return convexity_gap(norm, convexity_pair(norm, theta, epsilon)); };

    double best_theta = 0.0, best = value_at(0.0);
    for (std::size_t i = 1; i < kGrid; ++i) {
        const double theta = h * static_cast<double>(i);
        const double v = value_at(theta);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
    }
    // Golden-section refinement around the best grid angle.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_theta - h, b = best_theta + h;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = value_at(c), fd = value_at(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = value_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = value_at(d);
        }
    }
    const double refined = 0.5 * (a + b);
    const double theta = value_at(refined) < best ? refined : best_theta;

    ModulusEstimate est;
    est.parameter = epsilon;
    est.witness = convexity_pair(norm, theta, epsilon);
    est.value = std::clamp(convexity_gap(norm, est.witness), 0.0, 1.0);
    est.search_resolution = h;
    return est;
}

ModulusEstimate modulus_of_smoothness(const NormSpec& norm, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::invalid_input, "tau must be positive and finite");
    const double h = kPi / static_cast<double>(kGrid - 1);
    auto value_at = [&](double theta, double phi) {
        return smoothness_gain(norm, unit_sphere_point(norm, theta), tau * unit_sphere_point(norm, phi));
    };

    // y -> -y and (x, y) -> (-x, -y) leave the expression unchanged, so both
    // angles range over a half turn.
    std::vector<Point> sphere;
    sphere.reserve(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) sphere.push_back(unit_sphere_point(norm, h * static_cast<double>(i)));
    double best = -1.0, bt = 0.0, bp = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
        for (std::size_t j = 0; j < kGrid; ++j) {
            const double v = smoothness_gain(norm, sphere[i], tau * sphere[j]);
            if (v > best) {
                best = v;
                bt = h * static_cast<double>(i);
                bp = h * static_cast<double>(j);
            }
        }
    }
    // Compass search: try the eight neighbours, halve the step when none improves.
    for (double step = h; step > 1e-12;) {
        bool moved = false;
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const double t = bt + di * step, p = bp + dj * step;
                const double v = value_at(t, p);
                if (v > best) {
                    best = v;
                    bt = t;
                    bp = p;
                    moved = true;
                }
            }
        }
        if (!moved) step /= 2.0;
    }

    ModulusEstimate est;
    est.parameter = tau;
    est.witness = {unit_sphere_point(norm, bt), tau * unit_sphere_point(norm, bp)};
    est.value = std::max(0.0, smoothness_gain(norm, est.witness.first, est.witness.second));
    est.search_resolution = h;
    return est;
}

PowerTypeFit power_type_fit(const std::vector<std::pair<double, double>>& samples, ModulusKind kind,
                            double tolerance) {
    if (samples.size() < 4) throw Error(ErrorCode::invalid_input, "power-type fit needs at least 4 samples");
    double lo = samples.front().first, hi = lo;
    for (const auto& [t, v] : samples) {
        if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(v)) {
            throw Error(ErrorCode::invalid_input, "sample parameters must be positive and values finite");
        }
        if (!(v > 0.0)) throw Error(ErrorCode::not_power_type, "a modulus sample is not positive");
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (hi < 4.0 * lo) throw Error(ErrorCode::invalid_input, "sample parameters must span at least a factor of 4");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& [t, v] : samples) {
        const double x = std::log(t), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const PowerTypeFit fit{std::exp((sy - slope * sx) / n), slope};
    if (kind == ModulusKind::convexity && fit.p < 2.0 - tolerance) {
        throw Error(ErrorCode::not_power_type, "fitted convexity exponent " + std::to_string(fit.p) + " is below 2");
    }
    if (kind == ModulusKind::smoothness && fit.p > 2.0 + tolerance) {
        throw Error(ErrorCode::not_power_type, "fitted smoothness exponent " + std::to_string(fit.p) + " is above 2");
    }
    return fit;
}

double interpolated_convexity_modulus(const NormSpec& norm, double epsilon) {
    constexpr std::size_t kKnots = 200;
    static std::mutex mutex;
    static std::map<std::string, std::vector<double>> cache;
    if (!(epsilon >= 0.0) || epsilon > 2.0 + 1e-12) throw Error(ErrorCode::invalid_input, "epsilon must lie in [0, 2]");
    const std::vector<double>* table = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& t = cache[norm.describe()];
        if (t.empty()) {
            t.resize(kKnots, 0.0);
            for (std::size_t i = 1; i < kKnots; ++i) {
                t[i] = modulus_of_convexity(norm, 2.0 * static_cast<double>(i) / (kKnots - 1)).value;
            }
        }
        table = &t;
    }
    const double pos = std::min(epsilon, 2.0) / 2.0 * (kKnots - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), kKnots - 2);
    const double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * (*table)[i] + frac * (*table)[i + 1];
}

namespace {

struct ArcPath {
    const PathPolyline* path;
    std::vector<double> cum;  // norm arc length at each vertex

    ArcPath(const PathPolyline& p, const NormSpec& norm) : path(&p), cum(p.size(), 0.0) {
        for (std::size_t i = 1; i < p.size(); ++i) cum[i] = cum[i - 1] + norm(p.vertices[i] - p.vertices[i - 1]);
    }
    double length() const { return cum.back(); }
    /// Position at arc length s; constant past the end.
    Point at(double s) const {
        if (s >= cum.back()) return path->back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - cum.begin());
        if (i == 0) return path->front();
        const double t = (s - cum[i - 1]) / (cum[i] - cum[i - 1]);
        return lerp(path->vertices[i - 1], path->vertices[i], t);
    }
};

void fail(const std::string& condition, const std::string& detail) {
    throw Error(ErrorCode::precondition_failed, condition + ": " + detail);
}

/// Smallest norm on the segment [a, b]; the norm is convex along it.
double min_norm_on_segment(const NormSpec& norm, const Point& a, const Point& b) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (norm(lerp(a, b, m1)) < norm(lerp(a, b, m2))) hi = m2;
        else lo = m1;
    }
    return std::min({norm(a), norm(b), norm(lerp(a, b, 0.5 * (lo + hi)))});
}

void require_in_annulus(const NormSpec& norm, const PathPolyline& p, const char* which) {
    constexpr double slack = 1e-12;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (norm(p.vertices[i]) > 2.0 + slack) fail("annulus containment", std::string(which) + " leaves the ball of radius 2");
        const double m = i + 1 < p.size() ? min_norm_on_segment(norm, p.vertices[i], p.vertices[i + 1]) : norm(p.vertices[i]);
        if (m < 1.0 - slack) fail("annulus containment", std::string(which) + " enters the unit ball");
    }
}

PathPolyline sub_path(const ArcPath& a, double s0, double s1) {
    PathPolyline out;
    out.vertices.push_back(a.at(s0));
    for (std::size_t i = 0; i < a.cum.size(); ++i) {
        if (a.cum[i] > s0 && a.cum[i] < s1) out.vertices.push_back(a.path->vertices[i]);
    }
    const Point end = a.at(s1);
    if (!(end == out.vertices.back())) out.vertices.push_back(end);
    return out;
}

}  // namespace

LemmaMargin qhlemma_margin(const NormSpec& norm, const AnnulusPathPair& pair) {
    const auto& g1 = pair.gamma1;
    const auto& g2 = pair.gamma2;
    if (g1.size() == 0 || g2.size() == 0) fail("parameterization", "empty path");
    if (g1.front().dim() != 2 || g2.front().dim() != 2) throw Error(ErrorCode::invalid_input, "paths must be planar");
    for (const auto* p : {&g1, &g2}) {
        for (std::size_t i = 1; i < p->size(); ++i) {
            require_same_dim(p->vertices[i], p->vertices[0]);
            if (p->vertices[i] == p->vertices[i - 1]) fail("parameterization", "repeated vertex, arc length is not a parameter");
        }
    }
    if (!(g1.front() == g2.front())) fail("common start", "paths start at different points");

    const ArcPath a1(g1, norm), a2(g2, norm);
    const double t1 = a1.length(), t2 = a2.length();
    if (t1 > t2) fail("length order", "gamma1 is longer than gamma2");

    // Common parameter grid: the union of both breakpoint sets.
    std::vector<double> grid(a1.cum);
    grid.insert(grid.end(), a2.cum.begin(), a2.cum.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(), [](double x, double y) { return std::abs(x - y) <= 1e-15; }),
               grid.end());
    PathPolyline mid;
    for (double s : grid) {
        const Point m = (a1.at(s) + a2.at(s)) / 2.0;
        if (mid.vertices.empty() || !(m == mid.vertices.back())) mid.vertices.push_back(m);
    }

    require_in_annulus(norm, g1, "gamma1");
    require_in_annulus(norm, g2, "gamma2");
    require_in_annulus(norm, mid, "the midpoint path");

    const Domain omega = Domain::punctured({Point(2)});
    const double k1 = qh_length(omega, norm, g1), k2 = qh_length(omega, norm, g2);
    if (std::max(k1, k2) > pair.R) fail("length bound", "quasihyperbolic length exceeds R");

    LemmaMargin out;
    out.t1 = t1;
    out.t2 = t2;
    const double tail = t2 > t1 ? qh_length(omega, norm, sub_path(a2, t1, t2)) / 2.0 : 0.0;
    out.lhs = (k1 + k2) / 2.0 + tail;

    const GaussRule& rule = gauss_legendre(8);
    double defect = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size() && grid[i] < t1; ++i) {
        const double s0 = grid[i], s1 = std::min(grid[i + 1], t1);
        const double ds = s1 - s0;
        if (ds <= 0.0) continue;
        const Point p1 = a1.at(s0), q1 = a1.at(s1), p2 = a2.at(s0), q2 = a2.at(s1);
        const double eps = std::min(2.0, norm(((q1 - p1) - (q2 - p2)) / ds));
        const double delta = interpolated_convexity_modulus(norm, eps);
        if (delta == 0.0) continue;
        double integral = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = rule.nodes[k];
            integral += rule.weights[k] / (norm(lerp(p1, q1, t)) + norm(lerp(p2, q2, t)));
        }
        defect += delta * integral * ds;
    }
    out.rhs = qh_length(omega, norm, mid) + defect;
    out.margin = out.lhs - out.rhs;

    const double p = norm.is_euclidean() ? 2.0 : norm.p();
    if (!(p >= 1.5 && p <= 3.0)) {
        out.warning = "norm " + norm.describe() + " is outside p in [1.5, 3]; the estimate assumes power type 2 moduli";
    }
    return out;
}

}  // namespace qhm
