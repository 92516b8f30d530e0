#pragma once

#include "qhm/closed_form.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qhm {

/// A critical radius: a transcendental root, an exact expression, infinity,
/// or unknown (value empty).
struct CriticalRadius {
    std::string name;
    std::optional<double> value;  // empty when the radius is not known
    std::string expression;       // "log 2", "kappa", "inf", "?" ...
    std::string defining_equation;
    std::optional<std::pair<double, double>> bracket;
    std::string source;
    bool sharp = true;

    bool known() const noexcept { return value.has_value(); }
};

/// g(p) = cos s + s sin s with s = sqrt(p^2 - 1).
double critical_radius_function(double p);
/// g'(p) = p cos s.
double critical_radius_derivative(double p);

struct RootOptions {
    double bisection_width = 1e-8;
    double tolerance = 1e-12;
};

/// Root of g(p) = target on [lo, hi] by bisection followed by Newton polish,
/// falling back to bisection if Newton leaves the bracket.
double solve_critical_equation(double target, double lo, double hi, const RootOptions& opts = {});

/// Starlikeness radius of quasihyperbolic balls in the punctured space:
/// g(p) = e^{-1} on [1, pi].
CriticalRadius solve_kappa(const RootOptions& opts = {});
/// Close-to-convexity radius: g(p) = 0 on (2, pi).
CriticalRadius solve_lambda(const RootOptions& opts = {});

/// Cached values, computed once.
double kappa();
double lambda();

struct RadiusTableRow {
    std::string domain_class;
    CriticalRadius convex;
    CriticalRadius starlike;
    CriticalRadius close_to_convex;
};

/// Known radii of convexity, starlikeness and close-to-convexity for k-balls
/// (quasihyperbolic) or j-balls (distance_ratio). Other metrics throw
/// invalid_input.
const std::vector<RadiusTableRow>& radius_table(MetricKind metric);

/// Resolves the symbolic radius names accepted on the command line
/// (log2, log1+sqrt2, log1+sqrt3, kappa, lambda, pi/2) or a decimal number.
double parse_radius(const std::string& text);

}  // namespace qhm
