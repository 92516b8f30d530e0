#include "qhm/constants.hpp"

#include "qhm/error.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace qhm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::string kEquation = "cos(sqrt(p^2-1)) + sqrt(p^2-1) sin(sqrt(p^2-1))";

CriticalRadius exact(std::string name, double value, std::string expression, std::string source, bool sharp = true) {
    return {std::move(name), value, std::move(expression), "", std::nullopt, std::move(source), sharp};
}

CriticalRadius unknown(std::string name, std::string source) {
    return {std::move(name), std::nullopt, "?", "", std::nullopt, std::move(source), false};
}

CriticalRadius with_source(CriticalRadius r, std::string source, bool sharp) {
    r.source = std::move(source);
    r.sharp = sharp;
    return r;
}

std::vector<RadiusTableRow> build_k_table() {
    const double log_inf = kInf;
    auto row = [](std::string cls, CriticalRadius c, CriticalRadius s, CriticalRadius ctc) {
        return RadiusTableRow{std::move(cls), std::move(c), std::move(s), std::move(ctc)};
    };
    auto inf = [&](std::string src) { return exact("infinite", log_inf, "inf", std::move(src)); };
    const CriticalRadius kap = solve_kappa();
    const CriticalRadius lam = solve_lambda();
    const double half_pi = std::numbers::pi / 2;
    return {
        row("R^2 \\ {0}", exact("convex", 1.0, "1", "k: R^2 \\ {0}"), with_source(kap, "k: R^2 \\ {0}", true),
            with_source(lam, "k: R^2 \\ {0}", true)),
        row("R^n \\ {0}", exact("convex", 1.0, "1", "k: R^n \\ {0}"), with_source(kap, "k: R^n \\ {0}", true),
            with_source(lam, "k: R^n \\ {0}", false)),
        row("convex, R^n", inf("k: convex, R^n"), inf("k: convex, R^n"), inf("k: convex, R^n")),
        row("convex, BS", inf("k: convex, BS"), inf("k: convex, BS"), inf("k: convex, BS")),
        row("starlike w.r.t. x, R^n", unknown("convex", "k: starlike w.r.t. x, R^n"),
            inf("k: starlike w.r.t. x, R^n"), inf("k: starlike w.r.t. x, R^n")),
        row("general (n = 2), R^n", exact("convex", 1.0, "1", "k: general (n = 2)"),
            exact("starlike", half_pi, "pi/2", "k: general (n = 2)", false),
            exact("close_to_convex", half_pi, "pi/2", "k: general (n = 2)", false)),
        row("general (n >= 2), R^n", unknown("convex", "k: general (n >= 2)"),
            exact("starlike", half_pi, "pi/2", "k: general (n >= 2)", false),
            exact("close_to_convex", half_pi, "pi/2", "k: general (n >= 2)", false)),
    };
}

std::vector<RadiusTableRow> build_j_table() {
    auto inf = [](std::string src) { return exact("infinite", kInf, "inf", std::move(src)); };
    const double log2 = std::numbers::ln2;
    const double log1s2 = std::log1p(std::numbers::sqrt2);
    const double log1s3 = std::log1p(std::numbers::sqrt3);
    return {
        {"convex, R^n", inf("j: convex, R^n"), inf("j: convex, R^n"), inf("j: convex, R^n")},
        {"convex, BS", inf("j: convex, BS"), inf("j: convex, BS"), inf("j: convex, BS")},
        {"starlike w.r.t. x, R^n", exact("convex", log2, "log 2", "j: starlike w.r.t. x, R^n"),
         inf("j: starlike w.r.t. x, R^n"), inf("j: starlike w.r.t. x, R^n")},
        {"general (n = 2), R^n", exact("convex", log2, "log 2", "j: general (n = 2)"),
         exact("starlike", log1s2, "log(1+sqrt2)", "j: general (n = 2)"),
         exact("close_to_convex", log1s3, "log(1+sqrt3)", "j: general (n = 2)")},
        {"general (n >= 2), R^n", exact("convex", log2, "log 2", "j: general (n >= 2)"),
         exact("starlike", log1s2, "log(1+sqrt2)", "j: general (n >= 2)"),
         exact("close_to_convex", log1s3, "log(1+sqrt3)", "j: general (n >= 2)", false)},
    };
}

}  // namespace

double critical_radius_function(double p) {
    const double s = std::sqrt(p * p - 1.0);
    return std::cos(s) + s * std::sin(s);
}

double critical_radius_derivative(double p) { return p * std::cos(std::sqrt(p * p - 1.0)); }

double solve_critical_equation(double target, double lo, double hi, const RootOptions& opts) {
    auto f = [&](double p) { return critical_radius_function(p) - target; };
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw Error(ErrorCode::invalid_input, "no sign change on the bracket");

    while (hi - lo > opts.bisection_width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }

    double p = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double step = f(p) / critical_radius_derivative(p);
        const double next = p - step;
        if (!(next >= lo && next <= hi)) break;
        p = next;
        if (std::abs(step) <= std::max(opts.tolerance * 1e-3, 4 * std::numeric_limits<double>::epsilon() * p)) return p;
    }
    // Newton left the bracket: finish by bisection.
    while (hi - lo > opts.tolerance * 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CriticalRadius solve_kappa(const RootOptions& opts) {
    const double lo = 1.0, hi = std::numbers::pi;
    const double value = solve_critical_equation(std::exp(-1.0), lo, hi, opts);
    return {"kappa", value, "kappa", kEquation + " = e^-1", std::pair{lo, hi}, "", true};
}

CriticalRadius solve_lambda(const RootOptions& opts) {
    const double lo = 2.0 + 1e-9, hi = std::numbers::pi - 1e-9;
    const double value = solve_critical_equation(0.0, lo, hi, opts);
    return {"lambda", value, "lambda", kEquation + " = 0", std::pair{lo, hi}, "", true};
}

double kappa() {
    static const double value = *solve_kappa().value;
    return value;
}

double lambda() {
    static const double value = *solve_lambda().value;
    return value;
}

const std::vector<RadiusTableRow>& radius_table(MetricKind metric) {
    if (metric == MetricKind::quasihyperbolic) {
        static const std::vector<RadiusTableRow> table = build_k_table();
        return table;
    }
    if (metric == MetricKind::distance_ratio) {
        static const std::vector<RadiusTableRow> table = build_j_table();
        return table;
    }
    throw Error(ErrorCode::invalid_input, "radius tables exist for the quasihyperbolic and distance ratio metrics");
}

double parse_radius(const std::string& text) {
    if (text == "log2") return std::numbers::ln2;
    if (text == "log1+sqrt2") return std::log1p(std::numbers::sqrt2);
    if (text == "log1+sqrt3") return std::log1p(std::numbers::sqrt3);
    if (text == "kappa") return kappa();
    if (text == "lambda") return lambda();
    if (text == "pi/2") return std::numbers::pi / 2;
    if (text == "pi") return std::numbers::pi;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v) || !(v > 0)) {
        throw Error(ErrorCode::invalid_input, "cannot parse radius '" + text + "'");
    }
    return v;
}

}  // namespace qhm
