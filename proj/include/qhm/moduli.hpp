#pragma once

#include "qhm/norm.hpp"
#include "qhm/path.hpp"
#include "qhm/point.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qhm {

/// One value of the modulus of convexity (parameter = epsilon) or of
/// smoothness (parameter = tau) of a planar normed space.
struct ModulusEstimate {
    double parameter = 0.0;
    double value = 0.0;
    /// Optimizer (x, y): the defining expression evaluated here gives `value`.
    std::pair<Point, Point> witness;
    /// Angular spacing of the initial grid scan.
    double search_resolution = 0.0;
};

/// delta(eps) = inf { 1 - |x + y| / 2 : |x| = |y| = 1, |x - y| = eps }, 0 < eps <= 2.
ModulusEstimate modulus_of_convexity(const NormSpec& norm, double epsilon);

/// rho(tau) = sup { (|x + y| + |x - y|) / 2 - 1 : |x| = 1, |y| = tau }, tau > 0.
ModulusEstimate modulus_of_smoothness(const NormSpec& norm, double tau);

/// Unit vector of `norm` in direction angle theta.
Point unit_sphere_point(const NormSpec& norm, double theta);

enum class ModulusKind { convexity, smoothness };

struct PowerTypeFit {
    double K = 0.0;  // value ~ K * parameter^p
    double p = 0.0;
};

/// Least-squares fit of log(value) against log(parameter). A convexity fit
/// must come out with p >= 2 - tolerance and a smoothness fit with
/// p <= 2 + tolerance; otherwise, or when a value is not positive, throws
/// not_power_type.
PowerTypeFit power_type_fit(const std::vector<std::pair<double, double>>& samples, ModulusKind kind,
                            double tolerance = 0.05);

/// Two paths in the punctured normed plane, both starting at the same point,
/// compared by the averaging estimate for quasihyperbolic lengths.
struct AnnulusPathPair {
    PathPolyline gamma1;
    PathPolyline gamma2;
    /// Bound on the larger of the two quasihyperbolic lengths.
    double R = 0.1;
};

struct LemmaMargin {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    /// Norm lengths of gamma1 and gamma2.
    double t1 = 0.0, t2 = 0.0;
    /// Set when the norm is outside the range the estimate is stated for.
    std::string warning;
};

/// Evaluates both sides of the estimate. gamma1 must be the shorter path (in
/// the norm); the pair is checked first and a precondition_failed error names
/// the condition that does not hold.
LemmaMargin qhlemma_margin(const NormSpec& norm, const AnnulusPathPair& pair);

/// delta tabulated on 200 equally spaced knots of [0, 2] (delta(0) = 0)
/// and linearly interpolated. Cached per norm.
double interpolated_convexity_modulus(const NormSpec& norm, double epsilon);

}  // namespace qhm
