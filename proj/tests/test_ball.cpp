#include "qhm/ball.hpp"
#include "qhm/constants.hpp"
#include "qhm/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qhm;

namespace {

ShapeBudget small() {
    ShapeBudget b;
    b.boundary_samples = 90;
    b.star_rays = 720;
    b.directions = 60;
    b.field_cells = 80;
    return b;
}

const Domain& plane_minus_origin() {
    static const Domain d = Domain::punctured({Point{0, 0}});
    return d;
}

}  // namespace

TEST(Contours, SignedArea) {
    const Polyline2 ccw{Point{0, 0}, Point{2, 0}, Point{2, 1}, Point{0, 1}, Point{0, 0}};
    EXPECT_DOUBLE_EQ(signed_area(ccw), 2.0);
    const Polyline2 cw(ccw.rbegin(), ccw.rend());
    EXPECT_DOUBLE_EQ(signed_area(cw), -2.0);
}

TEST(Contours, JDiskBoundaryIsOneCounterClockwiseLoop) {
    const Point c{1, 0};
    const double r = 0.5;
    const auto field = distance_field(plane_minus_origin(), MetricKind::distance_ratio, c,
                                      ball_grid(plane_minus_origin(), c, r, 120));
    EXPECT_TRUE(field.exact);
    const auto loops = trace_ball_boundary(field, r);
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0].front(), loops[0].back());
    EXPECT_GT(signed_area(loops[0]), 0.0);
    // On the level set |z - c| = min(1, |z|) (e^r - 1).
    for (const auto& p : loops[0]) {
        EXPECT_NEAR(distance(p, c), std::min(1.0, length(p)) * std::expm1(r), 2 * field.grid.cell);
    }
}

TEST(Contours, TwoPuncturesSplitTheJBall) {
    const auto d = Domain::punctured({Point{1, 0}, Point{-1, 0}});
    const Point c{0, std::sqrt(3.0)};
    const double t = std::log(1 + std::sqrt(3.0));
    for (auto [r, expected] : {std::pair{t - 0.05, 1u}, std::pair{t + 0.05, 2u}}) {
        const auto field = distance_field(d, MetricKind::distance_ratio, c, ball_grid(d, c, r, 200));
        EXPECT_EQ(count_components(field, r), expected) << r;
    }
}

TEST(Ball, WindowContainsTheBall) {
    const Point c{1, 0};
    EXPECT_DOUBLE_EQ(ball_window_radius(plane_minus_origin(), c, 2.0), std::expm1(2.0));
    // k(c, z) >= j(c, z) >= log(1 + |z - c| / d(c)), so points beyond the window are outside.
    const double w = ball_window_radius(plane_minus_origin(), c, 1.0);
    EXPECT_GE(std::log1p(w), 1.0 - 1e-12);
}

TEST(Ball, KConvexityThreshold) {
    const Point c{1, 0};
    const auto in = test_convex(plane_minus_origin(), MetricKind::quasihyperbolic, c, 0.9, small());
    EXPECT_EQ(in.verdict, Verdict::pass) << in.note;
    EXPECT_LE(in.max_excess, in.tolerance);
    const auto out = test_convex(plane_minus_origin(), MetricKind::quasihyperbolic, c, 1.3, small());
    ASSERT_EQ(out.verdict, Verdict::fail) << out.note;
    ASSERT_TRUE(out.witness.has_value());
    EXPECT_TRUE(out.witness_reverified);
    EXPECT_GT(out.witness->excess, out.tolerance);
}

TEST(Ball, KStarlikeThreshold) {
    const Point c{1, 0};
    EXPECT_EQ(test_starlike(plane_minus_origin(), MetricKind::quasihyperbolic, c, 2.5, small()).verdict, Verdict::pass);
    const auto out = test_starlike(plane_minus_origin(), MetricKind::quasihyperbolic, c, 3.0, small());
    EXPECT_EQ(out.verdict, Verdict::fail);
    ASSERT_TRUE(out.witness.has_value());
}

TEST(Ball, CloseToConvexPassesWhenStarlike) {
    const Point c{1, 0};
    const auto rep = test_close_to_convex(plane_minus_origin(), MetricKind::quasihyperbolic, c, 2.0, small());
    EXPECT_EQ(rep.verdict, Verdict::pass);
}

TEST(Ball, JBallsInPuncturedPlane) {
    const Point c{1, 0};
    EXPECT_EQ(test_convex(plane_minus_origin(), MetricKind::distance_ratio, c, std::log(2.0) - 0.01, small()).verdict,
              Verdict::pass);
    EXPECT_EQ(test_starlike(plane_minus_origin(), MetricKind::distance_ratio, c, std::log(1 + std::sqrt(2.0)) - 0.01,
                            small())
                  .verdict,
              Verdict::pass);
    EXPECT_EQ(test_starlike(plane_minus_origin(), MetricKind::distance_ratio, c, 1.3, small()).verdict, Verdict::fail);
}

TEST(Ball, HyperbolicDisksAreConvex) {
    const auto disk = Domain::unit_ball(Point{0, 0}, 1);
    for (double r : {0.5, 2.0}) {
        const auto rep = test_convex(disk, MetricKind::hyperbolic_ball, Point{0.3, 0.2}, r, small());
        EXPECT_EQ(rep.verdict, Verdict::pass) << r << " " << rep.max_excess;
    }
}

TEST(Ball, NumericFieldOnPolygon) {
    const auto tri = Domain::convex_polygon({Point{0, 0}, Point{2, 0}, Point{1, 1.7}});
    const auto rep = test_convex(tri, MetricKind::quasihyperbolic, Point{1, 0.5}, 1.0, small());
    EXPECT_FALSE(rep.exact_metric);
    EXPECT_NE(rep.verdict, Verdict::fail);
    EXPECT_NEAR(rep.tolerance, 0.02, 1e-15);
}

TEST(Ball, ConnectedAndInheritance) {
    const auto sq = Domain::convex_polygon({Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}});
    EXPECT_EQ(test_connected(sq, MetricKind::distance_ratio, Point{0.5, 0.5}, 1.0, small()).verdict, Verdict::pass);
    const auto inh =
        test_starlike_domain_inheritance(sq, MetricKind::distance_ratio, Point{0.5, 0.5}, small(), {0.5, 1.0, 2.0});
    EXPECT_EQ(inh.verdict, Verdict::pass);
}

TEST(Ball, InvalidInput) {
    EXPECT_THROW(test_convex(plane_minus_origin(), MetricKind::quasihyperbolic, Point{1, 0}, -1.0), Error);
    EXPECT_THROW(test_convex(plane_minus_origin(), MetricKind::quasihyperbolic, Point{0, 0}, 1.0), Error);
    const auto space = Domain::punctured({Point{0, 0, 0}});
    EXPECT_THROW(test_convex(space, MetricKind::quasihyperbolic, Point{1, 0, 0}, 1.0), Error);
}

TEST(Budget, RefinedDoublesSamples) {
    const ShapeBudget b;
    const auto r = b.refined();
    EXPECT_EQ(r.boundary_samples, 2 * b.boundary_samples);
    EXPECT_EQ(r.star_rays, 2 * b.star_rays);
    EXPECT_EQ(r.field_cells, 2 * b.field_cells);
    EXPECT_DOUBLE_EQ(r.step_fraction, b.step_fraction / 2);
}

TEST(Verdicts, Names) {
    EXPECT_EQ(to_string(Verdict::inconclusive), "inconclusive");
    EXPECT_EQ(to_string(ShapeProperty::close_to_convex), "close_to_convex");
}
