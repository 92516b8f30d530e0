#include "qhm/geodesic.hpp"

#include "qhm/closed_form.hpp"
#include "qhm/error.hpp"
#include "qhm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace qhm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Offset = std::array<int, kMaxDim>;

double integrate_piece(const Domain& domain, const NormSpec& norm, const Point& a, const Point& b, double seg_len,
                       double t0, double t1, double d0, double d1, const GaussRule& rule, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const double dm = domain.boundary_distance_or_zero(norm, lerp(a, b, tm));
    if (!(d0 > 0) || !(d1 > 0) || !(dm > 0)) {
        throw Error(ErrorCode::path_exits_domain, "segment " + a.to_string() + " -> " + b.to_string() +
                                                      " touches the boundary");
    }
    const double lo = std::min({d0, d1, dm});
    const double hi = std::max({d0, d1, dm});
    const double piece_len = (t1 - t0) * seg_len;
    // d is 1-Lipschitz, so piece_len <= lo keeps d >= lo / 2 inside the piece.
    if ((hi > 2.0 * lo || piece_len > lo) && depth < 64) {
        return integrate_piece(domain, norm, a, b, seg_len, t0, tm, d0, dm, rule, depth + 1) +
               integrate_piece(domain, norm, a, b, seg_len, tm, t1, dm, d1, rule, depth + 1);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double d = domain.boundary_distance_or_zero(norm, lerp(a, b, t0 + (t1 - t0) * rule.nodes[i]));
        if (!(d > 0)) throw Error(ErrorCode::path_exits_domain, "quadrature node left the domain");
        sum += rule.weights[i] / d;
    }
    return sum * piece_len;
}

double segment_length_unchecked(const Domain& domain, const NormSpec& norm, const Point& a, const Point& b,
                                const GaussRule& rule) {
    const double len = norm(b - a);
    if (len == 0.0) return 0.0;
    return integrate_piece(domain, norm, a, b, len, 0.0, 1.0, domain.boundary_distance_or_zero(norm, a),
                           domain.boundary_distance_or_zero(norm, b), rule, 0);
}

std::vector<Offset> primitive_stencil(std::size_t dim, int radius) {
    std::vector<Offset> out;
    Offset o{};
    std::function<void(std::size_t)> rec = [&](std::size_t axis) {
        if (axis == dim) {
            int g = 0;
            for (std::size_t i = 0; i < dim; ++i) g = std::gcd(g, std::abs(o[i]));
            if (g == 1) out.push_back(o);
            return;
        }
        for (int v = -radius; v <= radius; ++v) {
            o[axis] = v;
            rec(axis + 1);
        }
        o[axis] = 0;
    };
    rec(0);
    return out;
}

/// Dijkstra over a lattice with a point source and an optional point target,
/// both attached to nearby lattice nodes by straight segments.
class LatticeSearch {
public:
    LatticeSearch(const Domain& domain, const NormSpec& norm, const Lattice& lattice, int stencil_radius,
                  std::size_t quadrature_points)
        : domain_(domain),
          norm_(norm),
          lat_(lattice),
          rule_(gauss_legendre(quadrature_points)),
          stencil_(primitive_stencil(lattice.lo.dim(), stencil_radius)),
          attach_radius_(stencil_radius),
          n_(lattice.size()) {
        valid_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) valid_[i] = domain_.contains(lat_.point(i)) ? 1 : 0;
    }

    std::size_t node_count() const { return n_; }
    std::size_t source_index() const { return n_; }
    std::size_t target_index() const { return n_ + 1; }

    void run(const Point& source, const Point* target) {
        dist_.assign(n_ + 2, kInf);
        pred_.assign(n_ + 2, -1);
        done_.assign(n_ + 2, 0);
        std::unordered_map<std::size_t, double> target_links;
        if (target) {
            for (std::size_t node : nearby_nodes(*target)) {
                if (domain_.segment_inside(lat_.point(node), *target)) {
                    target_links.emplace(node, segment_length_unchecked(domain_, norm_, lat_.point(node), *target, rule_));
                }
            }
        }

        using Entry = std::pair<double, std::size_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        auto relax = [&](std::size_t from, std::size_t to, double w) {
            const double nd = dist_[from] + w;
            if (nd < dist_[to]) {
                dist_[to] = nd;
                pred_[to] = static_cast<std::int64_t>(from);
                queue.emplace(nd, to);
            }
        };

        dist_[source_index()] = 0.0;
        for (std::size_t node : nearby_nodes(source)) {
            const Point p = lat_.point(node);
            if (domain_.segment_inside(source, p)) {
                relax(source_index(), node, segment_length_unchecked(domain_, norm_, source, p, rule_));
            }
        }
        if (target && domain_.segment_inside(source, *target)) {
            relax(source_index(), target_index(), segment_length_unchecked(domain_, norm_, source, *target, rule_));
        }

        std::array<long, kMaxDim> idx{};
        const std::size_t dim = lat_.counts.size();
        while (!queue.empty()) {
            const auto [du, u] = queue.top();
            queue.pop();
            if (done_[u] || du > dist_[u]) continue;
            done_[u] = 1;
            if (u == target_index()) break;
            if (target) {
                if (auto it = target_links.find(u); it != target_links.end()) relax(u, target_index(), it->second);
            }
            std::size_t rem = u;
            for (std::size_t k = 0; k < dim; ++k) {
                idx[k] = static_cast<long>(rem % lat_.counts[k]);
                rem /= lat_.counts[k];
            }
            const Point pu = lat_.point(u);
            for (const Offset& o : stencil_) {
                std::size_t v = 0, stride = 1;
                bool in_range = true;
                for (std::size_t k = 0; k < dim; ++k) {
                    const long c = idx[k] + o[k];
                    if (c < 0 || c >= static_cast<long>(lat_.counts[k])) {
                        in_range = false;
                        break;
                    }
                    v += static_cast<std::size_t>(c) * stride;
                    stride *= lat_.counts[k];
                }
                if (!in_range || !valid_[v] || done_[v]) continue;
                const Point pv = lat_.point(v);
                if (!domain_.segment_inside(pu, pv)) continue;
                relax(u, v, segment_length_unchecked(domain_, norm_, pu, pv, rule_));
            }
        }
    }

    const std::vector<double>& dist() const { return dist_; }
    const std::vector<std::int64_t>& pred() const { return pred_; }

private:
    std::vector<std::size_t> nearby_nodes(const Point& p) const {
        const std::size_t dim = lat_.counts.size();
        std::array<long, kMaxDim> base{};
        for (std::size_t k = 0; k < dim; ++k) base[k] = static_cast<long>(std::floor((p[k] - lat_.lo[k]) / lat_.cell));
        std::vector<std::size_t> out;
        const long lo = -attach_radius_, hi = attach_radius_ + 1;
        std::array<long, kMaxDim> off{};
        std::function<void(std::size_t)> rec = [&](std::size_t axis) {
            if (axis == dim) {
                std::size_t v = 0, stride = 1;
                for (std::size_t k = 0; k < dim; ++k) {
                    const long c = base[k] + off[k];
                    if (c < 0 || c >= static_cast<long>(lat_.counts[k])) return;
                    v += static_cast<std::size_t>(c) * stride;
                    stride *= lat_.counts[k];
                }
                if (valid_[v]) out.push_back(v);
                return;
            }
            for (long d = lo; d <= hi; ++d) {
                off[axis] = d;
                rec(axis + 1);
            }
        };
        rec(0);
        return out;
    }

    const Domain& domain_;
    const NormSpec& norm_;
    const Lattice& lat_;
    const GaussRule& rule_;
    std::vector<Offset> stencil_;
    long attach_radius_;
    std::size_t n_;
    std::vector<char> valid_;
    std::vector<double> dist_;
    std::vector<std::int64_t> pred_;
    std::vector<char> done_;
};

double total_length(const std::vector<double>& seg) {
    double s = 0.0;
    for (double v : seg) s += v;
    return s;
}

std::vector<Point> pattern_directions(std::size_t dim) {
    std::vector<Point> dirs;
    for (std::size_t k = 0; k < dim; ++k) {
        for (double s : {1.0, -1.0}) {
            Point d(dim);
            d[k] = s;
            dirs.push_back(d);
        }
    }
    if (dim == 2) {
        const double h = std::sqrt(0.5);
        for (double sx : {1.0, -1.0}) {
            for (double sy : {1.0, -1.0}) dirs.push_back(Point{sx * h, sy * h});
        }
    }
    return dirs;
}

void drop_collinear(std::vector<Point>& v) {
    if (v.size() < 3) return;
    std::vector<Point> out{v.front()};
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const Point a = v[i] - out.back();
        const Point b = v[i + 1] - v[i];
        const double la = length(a), lb = length(b);
        if (la > 0 && lb > 0 && distance(a * (1.0 / la), b * (1.0 / lb)) < 1e-12) continue;
        out.push_back(v[i]);
    }
    out.push_back(v.back());
    v = std::move(out);
}

double initial_step(const std::vector<Point>& v, std::size_t i) {
    return 0.25 * std::min(distance(v[i - 1], v[i]), distance(v[i], v[i + 1]));
}

/// One pass over the interior vertices: each tries the midpoint of its
/// neighbours and a pattern of moves, keeping the best that shortens the path.
template <class SegLen>
void pattern_sweep(const Domain& domain, const SegLen& seg_len, const std::vector<Point>& dirs, std::vector<Point>& v,
                   std::vector<double>& seg, std::vector<double>& step) {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double current = seg[i - 1] + seg[i];
        double best = current;
        Point best_point = v[i];
        double best_left = 0, best_right = 0;
        auto consider = [&](const Point& c) {
            if (c == v[i - 1] || c == v[i + 1] || !domain.segment_inside(v[i - 1], c) ||
                !domain.segment_inside(c, v[i + 1])) {
                return;
            }
            const double l = seg_len(v[i - 1], c), r = seg_len(c, v[i + 1]);
            if (l + r < best) {
                best = l + r;
                best_point = c;
                best_left = l;
                best_right = r;
            }
        };
        consider(lerp(v[i - 1], v[i + 1], 0.5));
        for (const Point& d : dirs) consider(v[i] + step[i] * d);
        if (best < current) {
            v[i] = best_point;
            seg[i - 1] = best_left;
            seg[i] = best_right;
            step[i] *= 1.5;
        } else {
            step[i] *= 0.5;
        }
    }
}

/// Pattern search converges slowly on long-wavelength errors of a fine path,
/// so start from a handful of its vertices and subdivide after each stage.
std::vector<Point> coarse_to_fine(const Domain& domain, const NormSpec& norm, const std::vector<Point>& path,
                                  const GaussRule& rule, std::size_t max_vertices, std::size_t sweeps_per_level) {
    constexpr std::size_t kCoarse = 6;
    if (path.size() <= 2) return path;
    auto seg_len = [&](const Point& a, const Point& b) { return segment_length_unchecked(domain, norm, a, b, rule); };
    const std::size_t n = std::min(kCoarse, path.size());
    std::vector<Point> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(path[k * (path.size() - 1) / (n - 1)]);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!domain.segment_inside(v[i], v[i + 1])) return path;
    }
    const std::vector<Point> dirs = pattern_directions(domain.dim());
    const std::size_t target = std::min(max_vertices, std::max<std::size_t>(2 * path.size(), 33));
    for (std::size_t sweeps = 2 * sweeps_per_level;; sweeps = sweeps_per_level) {
        std::vector<double> seg(v.size() - 1), step(v.size(), 0.0);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) seg[i] = seg_len(v[i], v[i + 1]);
        for (std::size_t i = 1; i + 1 < v.size(); ++i) step[i] = initial_step(v, i);
        for (std::size_t s = 0; s < sweeps; ++s) {
            // Restart collapsed step sizes periodically.
            if (s % 10 == 9) {
                for (std::size_t i = 1; i + 1 < v.size(); ++i) step[i] = std::max(step[i], 0.05 * initial_step(v, i));
            }
            pattern_sweep(domain, seg_len, dirs, v, seg, step);
        }
        if (2 * v.size() - 1 > target) break;
        std::vector<Point> finer{v.front()};
        for (std::size_t i = 1; i < v.size(); ++i) {
            finer.push_back(lerp(v[i - 1], v[i], 0.5));
            finer.push_back(v[i]);
        }
        v = std::move(finer);
    }
    return v;
}

}  // namespace

void SolverOptions::validate() const {
    if (!(grid_resolution > 0) || quadrature_points_per_segment == 0 || refine_iterations == 0 ||
        !(target_rel_error >= 1e-6) || max_grid_nodes < 16 || !(box_padding > 0) || max_path_vertices < 2) {
        throw Error(ErrorCode::invalid_input, "solver options out of range");
    }
}

std::size_t Lattice::size() const {
    std::size_t n = 1;
    for (auto c : counts) n *= c;
    return n;
}

Point Lattice::point(std::size_t index) const {
    Point p = lo;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        p[k] = lo[k] + cell * static_cast<double>(index % counts[k]);
        index /= counts[k];
    }
    return p;
}

double qh_segment_length(const Domain& domain, const NormSpec& norm, const Point& a, const Point& b,
                         std::size_t quadrature_points) {
    domain.require_norm_supported(norm);
    require_same_dim(a, b);
    if (!domain.segment_inside(a, b)) {
        throw Error(ErrorCode::path_exits_domain, "segment " + a.to_string() + " -> " + b.to_string() +
                                                      " leaves the domain");
    }
    return segment_length_unchecked(domain, norm, a, b, gauss_legendre(quadrature_points));
}

double qh_length(const Domain& domain, const NormSpec& norm, const PathPolyline& path, std::size_t quadrature_points) {
    domain.require_norm_supported(norm);
    validate_path(domain, path);
    const GaussRule& rule = gauss_legendre(quadrature_points);
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        total += segment_length_unchecked(domain, norm, path.vertices[i - 1], path.vertices[i], rule);
    }
    return total;
}

PathPolyline refine_path(const Domain& domain, const NormSpec& norm, const PathPolyline& path,
                         std::size_t iterations, std::size_t quadrature_points, std::size_t max_vertices) {
    domain.require_norm_supported(norm);
    validate_path(domain, path);
    if (iterations == 0 || path.size() < 2) return path;
    const GaussRule& rule = gauss_legendre(quadrature_points);
    auto seg_len = [&](const Point& a, const Point& b) { return segment_length_unchecked(domain, norm, a, b, rule); };

    std::vector<Point> v = path.vertices;
    std::vector<double> seg(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) seg[i] = seg_len(v[i], v[i + 1]);
    const double input_length = total_length(seg);

    std::vector<double> step(v.size(), 0.0);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) step[i] = initial_step(v, i);
    const std::vector<Point> dirs = pattern_directions(domain.dim());

    for (std::size_t it = 0; it < iterations; ++it) {
        if (v.size() < max_vertices) {
            const auto longest = static_cast<std::size_t>(std::max_element(seg.begin(), seg.end()) - seg.begin());
            const Point mid = lerp(v[longest], v[longest + 1], 0.5);
            if (!(mid == v[longest]) && !(mid == v[longest + 1])) {
                v.insert(v.begin() + static_cast<long>(longest) + 1, mid);
                const double left = seg_len(v[longest], mid), right = seg_len(mid, v[longest + 2]);
                seg[longest] = left;
                seg.insert(seg.begin() + static_cast<long>(longest) + 1, right);
                step.insert(step.begin() + static_cast<long>(longest) + 1, 0.0);
                step[longest + 1] = initial_step(v, longest + 1);
            }
        }
        pattern_sweep(domain, seg_len, dirs, v, seg, step);
    }
    if (total_length(seg) > input_length) return path;
    return PathPolyline{std::move(v)};
}

NumericDistance qh_distance_numeric(const Domain& domain, const NormSpec& norm, const Point& x, const Point& y,
                                    const SolverOptions& opts) {
    opts.validate();
    domain.require_norm_supported(norm);
    require_same_dim(x, y);
    const double dx = domain.boundary_distance(norm, x);
    const double dy = domain.boundary_distance(norm, y);
    if (x == y) return NumericDistance{0.0, PathPolyline{{x}}, 0.0, 0, 0};

    const std::size_t dim = domain.dim();
    std::vector<Point> grid_path;
    bool found = false;
    NumericDistance result;
    for (std::size_t enlargement = 0; enlargement <= opts.max_box_enlargements; ++enlargement) {
        const double pad = opts.box_padding * std::max(dx, dy) * std::ldexp(1.0, static_cast<int>(enlargement));
        Point lo(dim), hi(dim);
        std::array<bool, kMaxDim> clip_lo{}, clip_hi{};
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(x[k], y[k]) - pad;
            hi[k] = std::max(x[k], y[k]) + pad;
        }
        if (domain.bounded()) {
            const Box bb = domain.bounding_box();
            for (std::size_t k = 0; k < dim; ++k) {
                if (lo[k] <= bb.lo[k]) lo[k] = bb.lo[k], clip_lo[k] = true;
                if (hi[k] >= bb.hi[k]) hi[k] = bb.hi[k], clip_hi[k] = true;
            }
        }
        double cell = opts.grid_resolution * std::min(dx, dy);
        Lattice lattice{lo, cell, std::vector<std::size_t>(dim)};
        for (;;) {
            double total = 1.0;
            for (std::size_t k = 0; k < dim; ++k) {
                lattice.counts[k] = static_cast<std::size_t>(std::ceil((hi[k] - lo[k]) / cell)) + 1;
                total *= static_cast<double>(lattice.counts[k]);
            }
            if (total <= static_cast<double>(opts.max_grid_nodes)) break;
            cell *= std::pow(total / static_cast<double>(opts.max_grid_nodes), 1.0 / static_cast<double>(dim)) * 1.001;
        }
        lattice.cell = cell;

        LatticeSearch search(domain, norm, lattice, 1, opts.quadrature_points_per_segment);
        search.run(x, &y);
        result.grid_nodes = lattice.size();
        result.box_enlargements = enlargement;
        if (!std::isfinite(search.dist()[search.target_index()])) continue;

        grid_path.clear();
        found = true;
        bool touches = false;
        for (std::int64_t node = search.pred()[search.target_index()];
             node >= 0 && static_cast<std::size_t>(node) != search.source_index();
             node = search.pred()[static_cast<std::size_t>(node)]) {
            std::size_t rem = static_cast<std::size_t>(node);
            for (std::size_t k = 0; k < dim; ++k) {
                const std::size_t c = rem % lattice.counts[k];
                rem /= lattice.counts[k];
                if ((c == 0 && !clip_lo[k]) || (c + 1 == lattice.counts[k] && !clip_hi[k])) touches = true;
            }
            grid_path.push_back(lattice.point(static_cast<std::size_t>(node)));
        }
        if (touches && enlargement < opts.max_box_enlargements) continue;
        break;
    }
    if (!found) {
        throw Error(ErrorCode::resolution_too_coarse, "no lattice path joins the endpoints; shrink the cell size");
    }

    std::vector<Point> vertices{x};
    vertices.insert(vertices.end(), grid_path.rbegin(), grid_path.rend());
    vertices.push_back(y);
    drop_collinear(vertices);
    PathPolyline path{std::move(vertices)};
    double value = qh_length(domain, norm, path, opts.quadrature_points_per_segment);
    result.grid_value = value;
    {
        PathPolyline smooth{coarse_to_fine(domain, norm, path.vertices, gauss_legendre(opts.quadrature_points_per_segment),
                                           opts.max_path_vertices, (5 * opts.refine_iterations + 3) / 4)};
        const double smooth_value = qh_length(domain, norm, smooth, opts.quadrature_points_per_segment);
        if (smooth_value < value) {
            path = std::move(smooth);
            value = smooth_value;
        }
    }

    for (std::size_t round = 0; round < opts.max_refine_rounds; ++round) {
        PathPolyline next = refine_path(domain, norm, path, opts.refine_iterations,
                                        opts.quadrature_points_per_segment, opts.max_path_vertices);
        const double next_value = qh_length(domain, norm, next, opts.quadrature_points_per_segment);
        const double improvement = (value - next_value) / value;
        if (next_value <= value) {
            path = std::move(next);
            value = next_value;
        }
        if (improvement < opts.target_rel_error / 10) break;
    }
    result.value = value;
    result.geodesic = std::move(path);
    return result;
}

std::vector<double> lattice_distances(const Domain& domain, const NormSpec& norm, const Lattice& lattice,
                                      const Point& source, std::size_t stencil_radius,
                                      std::size_t quadrature_points) {
    domain.require_norm_supported(norm);
    if (!domain.contains(source)) throw Error(ErrorCode::outside_domain, "source is not in the domain");
    if (stencil_radius == 0) throw Error(ErrorCode::invalid_input, "stencil radius must be positive");
    LatticeSearch search(domain, norm, lattice, static_cast<int>(stencil_radius), quadrature_points);
    search.run(source, nullptr);
    std::vector<double> out(search.dist().begin(), search.dist().begin() + static_cast<long>(lattice.size()));
    return out;
}

UniformityRatio uniformity_ratio(const Domain& domain, const std::vector<std::pair<Point, Point>>& pairs,
                                 const SolverOptions& opts) {
    if (pairs.empty()) throw Error(ErrorCode::invalid_input, "no point pairs given");
    UniformityRatio best;
    bool any = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        const double j = j_metric(domain, x, y);
        if (j == 0.0) continue;
        const double k = qh_distance_numeric(domain, NormSpec::euclidean(), x, y, opts).value;
        const double ratio = k / j;
        if (!any || ratio > best.sup_ratio) {
            best = UniformityRatio{ratio, i, pairs[i]};
            any = true;
        }
    }
    if (!any) throw Error(ErrorCode::empty_effective_set, "every pair has j = 0");
    return best;
}

}  // namespace qhm
