#include "qhm/closed_form.hpp"
#include "qhm/error.hpp"
#include "qhm/geodesic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qhm;

namespace {

constexpr double pi = std::numbers::pi;

// Poincare disk: 2 artanh of the pseudo-hyperbolic distance.
double poincare_oracle(const Point& x, const Point& y) {
    const double ax = x[0], ay = x[1], bx = y[0], by = y[1];
    // |x - y| / |1 - x conj(y)|
    const double re = 1 - (ax * bx + ay * by), im = -(ay * bx - ax * by);
    return 2 * std::atanh(std::hypot(ax - bx, ay - by) / std::hypot(re, im));
}

double upper_half_plane_oracle(const Point& x, const Point& y) {
    return std::acosh(1 + (std::pow(x[0] - y[0], 2) + std::pow(x[1] - y[1], 2)) / (2 * x[1] * y[1]));
}

}  // namespace

TEST(JMetric, MatchesDefinition) {
    const auto d = Domain::punctured({Point{0, 0}});
    EXPECT_DOUBLE_EQ(j_metric(d, Point{1, 0}, Point{-1, 0}), std::log(3.0));
    EXPECT_DOUBLE_EQ(j_metric(d, Point{2, 0}, Point{0, 5}), std::log1p(std::sqrt(29.0) / 2));
    EXPECT_EQ(j_metric(d, Point{2, 0}, Point{2, 0}), 0.0);
    // l^1 distances: |x - y|_1 = 3, d_1(x) = 1
    EXPECT_DOUBLE_EQ(j_metric(d, Point{1, 0}, Point{3, 1}, NormSpec::p_norm(1)), std::log(4.0));
}

TEST(JMetric, RejectsOutsidePoints) {
    const auto d = Domain::half_space(Point{0, 1}, 0);
    EXPECT_THROW(j_metric(d, Point{0, -1}, Point{0, 1}), Error);
}

TEST(Hyperbolic, BallAgainstPoincareFormula) {
    const UnitBall unit{Point{0, 0}, 1};
    EXPECT_NEAR(hyperbolic_ball_distance(unit, Point{0, 0}, Point{0.5, 0}), std::log(3.0), 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 200; ++i) {
        const Point x{u(rng), u(rng)}, y{u(rng), u(rng)};
        EXPECT_NEAR(hyperbolic_ball_distance(unit, x, y), poincare_oracle(x, y), 1e-11);
    }
    // Rescaled ball: distances are those of the normalised points.
    const UnitBall big{Point{2, -1}, 3};
    EXPECT_NEAR(hyperbolic_ball_distance(big, Point{2, -1}, Point{3.5, -1}), std::log(3.0), 1e-13);
}

TEST(Hyperbolic, HalfSpaceAgainstUpperHalfPlane) {
    const HalfSpace hs{Point{0, 1}, 0};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.05, 3);
    for (int i = 0; i < 200; ++i) {
        const Point x{ux(rng), uy(rng)}, y{ux(rng), uy(rng)};
        EXPECT_NEAR(hyperbolic_halfspace_distance(hs, x, y), upper_half_plane_oracle(x, y), 1e-10);
    }
    // Tilted half-space: rotate the configuration.
    const double c = std::cos(0.4), s = std::sin(0.4);
    auto rot = [&](const Point& p) { return Point{c * p[0] - s * p[1], s * p[0] + c * p[1]}; };
    const HalfSpace tilted{rot(Point{0, 1}), 0};
    const Point x{0.3, 0.7}, y{-1.2, 2.0};
    EXPECT_NEAR(hyperbolic_halfspace_distance(tilted, rot(x), rot(y)), upper_half_plane_oracle(x, y), 1e-12);
}

TEST(Punctured, AntipodalPointsArePiApart) {
    EXPECT_DOUBLE_EQ(qh_punctured_distance(Point{1, 0}, Point{-1, 0}), pi);
    EXPECT_NEAR(qh_punctured_distance(Point{1, 0}, Point{0, std::exp(1.0)}), std::hypot(pi / 2, 1.0), 1e-14);
    EXPECT_NEAR(qh_punctured_distance(Point{1, 0, 0}, Point{4, 0, 0}), std::log(4.0), 1e-14);
}

TEST(Punctured, InversionIsAnIsometry) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 200; ++i) {
        const Point x{u(rng), u(rng)}, y{u(rng), u(rng)};
        EXPECT_NEAR(qh_punctured_distance(mobius_inversion(x), mobius_inversion(y)), qh_punctured_distance(x, y),
                    1e-10);
    }
}

TEST(Punctured, GeodesicRealisesTheDistance) {
    const auto dom = Domain::punctured({Point{0, 0}});
    const Point x{1, 0}, y{-0.3, 2.5};
    const auto g = qh_punctured_geodesic(x, y, 400);
    EXPECT_TRUE(g.unique);
    EXPECT_EQ(g.path.front(), x);
    EXPECT_NEAR(distance(g.path.back(), y), 0.0, 1e-12);
    EXPECT_NEAR(qh_length(dom, NormSpec::euclidean(), g.path), qh_punctured_distance(x, y), 1e-4);
    // Triangle equality along the curve.
    const auto& mid = g.path.vertices[150];
    EXPECT_NEAR(qh_punctured_distance(x, mid) + qh_punctured_distance(mid, y), qh_punctured_distance(x, y), 1e-10);
}

TEST(Punctured, OppositeRaysAreNotUnique) {
    const auto g = qh_punctured_geodesic(Point{1, 0}, Point{-2, 0}, 64);
    EXPECT_FALSE(g.unique);
    for (const auto& v : g.path.vertices) EXPECT_GT(length(v), 0.99);
    const auto circle = qh_punctured_geodesic(Point{1, 0}, Point{0, 1}, 64);
    for (const auto& v : circle.path.vertices) EXPECT_NEAR(length(v), 1.0, 1e-12);
}

TEST(ClosedForm, Dispatch) {
    const auto one = Domain::punctured({Point{1, 1}});
    EXPECT_NEAR(*closed_form_distance(MetricKind::quasihyperbolic, one, Point{2, 1}, Point{0, 1}), pi, 1e-14);
    const auto two = Domain::punctured({Point{0, 0}, Point{1, 0}});
    EXPECT_FALSE(closed_form_distance(MetricKind::quasihyperbolic, two, Point{2, 1}, Point{0, 1}).has_value());
    const auto hs = Domain::half_space(Point{0, 1}, 0);
    EXPECT_NEAR(*closed_form_distance(MetricKind::quasihyperbolic, hs, Point{0, 1}, Point{0, std::exp(2.0)}), 2.0,
                1e-13);
    EXPECT_THROW(closed_form_distance(MetricKind::hyperbolic_ball, hs, Point{0, 1}, Point{0, 2}), Error);
}

// Quasihyperbolic and hyperbolic distances in the unit ball are comparable:
// k <= rho <= 2k, so rho <= 2 k_num for any numeric upper bound as well.
TEST(Hyperbolic, BallComparableWithQuasihyperbolic) {
    const auto ball = Domain::unit_ball(Point{0, 0}, 1);
    const UnitBall unit{Point{0, 0}, 1};
    SolverOptions opts;
    opts.refine_iterations = 8;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 6; ++i) {
        const Point x{u(rng), u(rng)}, y{u(rng), u(rng)};
        const double k = qh_distance_numeric(ball, NormSpec::euclidean(), x, y, opts).value;
        const double rho = hyperbolic_ball_distance(unit, x, y);
        EXPECT_LE(rho, 2 * k * (1 + 1e-9));
        EXPECT_GE(rho, 0.99 * k - 1e-9);
    }
}
