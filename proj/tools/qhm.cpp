// Command-line front end for the qhm library.

#include "qhm/ball.hpp"
#include "qhm/closed_form.hpp"
#include "qhm/constants.hpp"
#include "qhm/error.hpp"
#include "qhm/geodesic.hpp"
#include "qhm/json_io.hpp"
#include "qhm/moduli.hpp"
#include "qhm/render.hpp"
#include "qhm/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace qhm;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

MetricKind resolve_metric(const std::string& name, const Domain& domain) {
    if (name == "k") return MetricKind::quasihyperbolic;
    if (name == "j") return MetricKind::distance_ratio;
    if (std::holds_alternative<UnitBall>(domain.variant())) return MetricKind::hyperbolic_ball;
    if (std::holds_alternative<HalfSpace>(domain.variant())) return MetricKind::hyperbolic_halfspace;
    throw Error(ErrorCode::unsupported_combination, "the hyperbolic metric needs a unit_ball or half_space domain");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path);
    out << content;
}

std::vector<Point> punctures_of(const Domain& domain) {
    if (const auto* p = std::get_if<PuncturedSpace>(&domain.variant())) return p->punctures;
    return {};
}

/// Outline of the domain boundary inside the drawing, when it has one worth drawing.
std::vector<std::vector<Point>> domain_outline(const Domain& domain) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&domain.variant())) {
        auto loop = poly->vertices;
        loop.push_back(loop.front());
        return {loop};
    }
    if (const auto* ball = std::get_if<UnitBall>(&domain.variant()); ball && domain.dim() == 2) {
        std::vector<Point> loop;
        for (int i = 0; i <= 256; ++i) {
            const double t = 2.0 * std::numbers::pi * i / 256;
            loop.push_back(ball->center + ball->radius * Point{std::cos(t), std::sin(t)});
        }
        return {loop};
    }
    return {};
}

struct DistanceResult {
    double value;
    bool exact;
    PathPolyline geodesic;
};

DistanceResult compute_distance(const Domain& domain, const NormSpec& norm, MetricKind metric, const Point& x,
                                const Point& y, const SolverOptions& opts, bool want_geodesic) {
    if (metric == MetricKind::distance_ratio) return {j_metric(domain, x, y, norm), true, {}};
    if (norm.is_euclidean()) {
        if (auto v = closed_form_distance(metric, domain, x, y)) {
            PathPolyline path;
            if (want_geodesic) {
                if (const auto* p = std::get_if<PuncturedSpace>(&domain.variant()); p && p->punctures.size() == 1) {
                    auto g = qh_punctured_geodesic(x - p->punctures[0], y - p->punctures[0], 256);
                    for (auto& v2 : g.path.vertices) v2 = v2 + p->punctures[0];
                    path = g.path;
                } else {
                    path = qh_distance_numeric(domain, norm, x, y, opts).geodesic;
                }
            }
            return {*v, true, path};
        }
    }
    if (metric != MetricKind::quasihyperbolic) {
        throw Error(ErrorCode::unsupported_combination, "only the Euclidean norm is supported for this metric");
    }
    auto num = qh_distance_numeric(domain, norm, x, y, opts);
    return {num.value, false, num.geodesic};
}

int run_dist(const std::string& domain_text, const std::string& norm_text, const std::string& metric_name,
             const std::string& from, const std::string& to, const std::string& geodesic_out, const std::string& svg_out,
             bool geodesic_mode) {
    const Domain domain = load_domain(domain_text);
    const NormSpec norm = norm_text.empty() ? NormSpec::euclidean() : load_norm(norm_text);
    const MetricKind metric = resolve_metric(metric_name, domain);
    const Point x = parse_point(from), y = parse_point(to);
    const SolverOptions opts;
    const bool want = geodesic_mode || !geodesic_out.empty() || !svg_out.empty();
    const auto res = compute_distance(domain, norm, metric, x, y, opts, want);

    if (geodesic_mode) {
        if (geodesic_out.empty()) write_path_csv(std::cout, res.geodesic);
    } else if (res.exact) {
        std::cout << format_number(res.value) << '\n';
    } else {
        std::cout << format_number(res.value) << " (numeric upper bound, relative error budget "
                  << format_number(opts.target_rel_error) << ")\n";
    }
    if (!geodesic_out.empty()) {
        std::ofstream out(geodesic_out);
        if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + geodesic_out);
        write_path_csv(out, res.geodesic);
    }
    if (!svg_out.empty()) {
        SvgScene scene{domain_outline(domain), punctures_of(domain)};
        scene.polylines.push_back(res.geodesic.vertices);
        write_file(svg_out, render_svg(scene));
    }
    return 0;
}

int run_ball(const std::string& domain_text, const std::string& metric_name, const std::string& center_text,
             const std::vector<std::string>& radii_text, const std::string& test, const std::string& svg_out,
             const std::string& csv_out, const std::string& json_out, bool fast) {
    const Domain domain = load_domain(domain_text);
    if (domain.dim() != 2) throw Error(ErrorCode::invalid_input, "ball analysis is 2D only");
    const MetricKind metric = resolve_metric(metric_name, domain);
    const Point center = parse_point(center_text);
    std::vector<double> radii;
    for (const auto& t : radii_text) radii.push_back(parse_radius(t));
    if (radii.empty()) throw Error(ErrorCode::invalid_input, "at least one --radius is required");
    const ShapeBudget budget = verify_budget(fast);

    Json reports = Json::array();
    if (test != "none") {
        for (double r : radii) {
            ShapeReport rep;
            if (test == "convex") rep = test_convex(domain, metric, center, r, budget);
            else if (test == "starlike") rep = test_starlike(domain, metric, center, r, budget);
            else if (test == "close_to_convex") rep = test_close_to_convex(domain, metric, center, r, budget);
            else rep = test_connected(domain, metric, center, r, budget);
            reports.push_back(to_json(rep));
        }
    }
    if (!svg_out.empty() || !csv_out.empty()) {
        const double rmax = *std::max_element(radii.begin(), radii.end());
        const auto field = distance_field(domain, metric, center, ball_grid(domain, center, rmax, budget.field_cells));
        if (!svg_out.empty()) {
            SvgScene scene{domain_outline(domain), punctures_of(domain)};
            for (double r : radii) {
                for (auto& loop : trace_ball_boundary(field, r)) scene.polylines.push_back(std::move(loop));
            }
            write_file(svg_out, render_svg(scene));
        }
        if (!csv_out.empty()) {
            std::ofstream out(csv_out);
            if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + csv_out);
            write_field_csv(out, field);
        }
    }
    const std::string text = reports.dump(2) + "\n";
    if (json_out.empty()) {
        if (test != "none") std::cout << text;
    } else {
        write_file(json_out, text);
    }
    return 0;
}

int run_constants(const std::string& metric, const std::string& format) {
    std::vector<MetricKind> metrics;
    if (metric == "k" || metric == "both") metrics.push_back(MetricKind::quasihyperbolic);
    if (metric == "j" || metric == "both") metrics.push_back(MetricKind::distance_ratio);
    if (format == "json") {
        Json out{{"kappa", to_json(solve_kappa())}, {"lambda", to_json(solve_lambda())}, {"tables", Json::array()}};
        for (auto m : metrics) out["tables"].push_back(radius_table_json(m));
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "kappa  = " << format_number(kappa()) << "\nlambda = " << format_number(lambda()) << "\n";
        for (auto m : metrics) {
            std::cout << '\n' << (m == MetricKind::quasihyperbolic ? "k-balls" : "j-balls") << '\n'
                      << radius_table_text(m);
        }
    }
    return 0;
}

int run_moduli(const std::string& norm_text, const std::string& kind, std::vector<double> params,
               const std::string& csv_out) {
    const NormSpec norm = load_norm(norm_text);
    const bool convexity = kind == "convexity";
    if (params.empty()) params = {0.1, 0.2, 0.4, 0.8};
    std::vector<std::pair<double, double>> rows;
    for (double t : params) {
        rows.emplace_back(t, convexity ? modulus_of_convexity(norm, t).value : modulus_of_smoothness(norm, t).value);
    }
    std::ostringstream csv;
    write_pairs_csv(csv, convexity ? "epsilon" : "tau", convexity ? "delta" : "rho", rows);
    if (csv_out.empty()) std::cout << csv.str();
    else write_file(csv_out, csv.str());

    Json fit_json;
    try {
        fit_json = to_json(power_type_fit(rows, convexity ? ModulusKind::convexity : ModulusKind::smoothness));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::not_power_type) throw;
        fit_json = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
    Json out{{"norm", to_json(norm)}, {"kind", kind}, {"fit", fit_json}};
    (csv_out.empty() ? std::cerr : std::cout) << out.dump() << '\n';
    return 0;
}

int run_verify_cmd(const std::string& suite, std::uint64_t seed, bool fast) {
    VerifyOptions opts{suite, seed, fast};
    bool ok = true;
    run_verify(opts, [&](const CheckResult& r) {
        std::cout << to_json(r).dump() << std::endl;
        ok = ok && r.pass;
    });
    return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasihyperbolic and distance-ratio metric toolkit"};
    app.require_subcommand(1);

    std::string domain, norm, metric = "k", from, to, out, svg, csv, json, center, test = "none", suite = "all";
    std::string table_metric = "both", format = "text", kind = "convexity";
    std::vector<std::string> radii;
    std::vector<double> params;
    std::uint64_t seed = 42;
    bool fast = false;
    const std::vector<std::string> metrics{"k", "j", "hyperbolic"};

    auto* dist = app.add_subcommand("dist", "Distance between two points");
    auto* geo = app.add_subcommand("geodesic", "Geodesic between two points as CSV");
    for (auto* sc : {dist, geo}) {
        sc->add_option("--domain", domain, "Domain JSON file or inline JSON")->required();
        sc->add_option("--norm", norm, "Norm JSON file or inline JSON (default Euclidean)");
        sc->add_option("--metric", metric, "k, j or hyperbolic")->check(CLI::IsMember(metrics));
        sc->add_option("--from", from, "Start point, e.g. 1,0")->required();
        sc->add_option("--to", to, "End point")->required();
        sc->add_option("--svg", svg, "Write an SVG drawing of the geodesic");
    }
    dist->add_option("--geodesic-out", out, "Write the geodesic vertices as CSV");
    geo->add_option("--out", out, "CSV output file (default stdout)");

    auto* ball = app.add_subcommand("ball", "Shape tests and drawings of metric balls");
    ball->add_option("--domain", domain, "Domain JSON file or inline JSON")->required();
    ball->add_option("--metric", metric, "k, j or hyperbolic")->check(CLI::IsMember(metrics));
    ball->add_option("--center", center, "Ball center")->required();
    ball->add_option("--radius", radii, "Radius; repeatable; accepts log2, log1+sqrt2, log1+sqrt3, kappa, lambda, pi/2")
        ->required();
    ball->add_option("--test", test, "convex, starlike, close_to_convex, connected or none")
        ->check(CLI::IsMember({"convex", "starlike", "close_to_convex", "connected", "none"}));
    ball->add_option("--svg", svg, "Write traced boundaries as SVG");
    ball->add_option("--csv", csv, "Write the distance field as CSV");
    ball->add_option("--json", json, "Write shape reports to this file instead of stdout");
    ball->add_flag("--fast", fast, "Halved sample budgets");

    auto* constants = app.add_subcommand("constants", "Critical radii and the known-radius tables");
    constants->add_option("--metric", table_metric, "k, j or both")->check(CLI::IsMember({"k", "j", "both"}));
    constants->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* moduli = app.add_subcommand("moduli", "Moduli of convexity or smoothness of a planar norm");
    moduli->add_option("--norm", norm, "Norm JSON file or inline JSON")->required();
    moduli->add_option("--kind", kind, "convexity or smoothness")->check(CLI::IsMember({"convexity", "smoothness"}));
    moduli->add_option("--param", params, "Epsilon or tau values (default 0.1 0.2 0.4 0.8)");
    moduli->add_option("--csv", csv, "CSV output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    verify->add_option("--suite", suite, "all, constants, metrics, balls, properties, moduli or a check name");
    verify->add_option("--seed", seed, "Seed for randomized checks");
    verify->add_flag("--fast", fast, "Reduced budgets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*dist) return run_dist(domain, norm, metric, from, to, out, svg, false);
        if (*geo) return run_dist(domain, norm, metric, from, to, out, svg, true);
        if (*ball) return run_ball(domain, metric, center, radii, test, svg, csv, json, fast);
        if (*constants) return run_constants(table_metric, format);
        if (*moduli) return run_moduli(norm, kind, params, csv);
        if (*verify) return run_verify_cmd(suite, seed, fast);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
