#include "qhm/closed_form.hpp"
#include "qhm/error.hpp"
#include "qhm/geodesic.hpp"
#include "qhm/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qhm;

namespace {

SolverOptions quick() {
    SolverOptions o;
    o.refine_iterations = 10;
    return o;
}

}  // namespace

TEST(Quadrature, ExactForLowDegreePolynomials) {
    for (std::size_t n : {1u, 2u, 4u, 8u}) {
        const auto& rule = gauss_legendre(n);
        for (std::size_t k = 0; k < 2 * n; ++k) {
            double sum = 0;
            for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], double(k));
            EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-14) << n << " " << k;
        }
    }
}

TEST(QhLength, RadialAndVerticalSegments) {
    const auto punct = Domain::punctured({Point{0, 0}});
    EXPECT_NEAR(qh_segment_length(punct, NormSpec::euclidean(), Point{1, 0}, Point{5, 0}), std::log(5.0), 1e-9);
    const auto hs = Domain::half_space(Point{0, 1}, 0);
    EXPECT_NEAR(qh_segment_length(hs, NormSpec::euclidean(), Point{2, 0.01}, Point{2, 3}), std::log(300.0), 1e-8);
    // Horizontal segment at height h has length |dx| / h.
    EXPECT_NEAR(qh_segment_length(hs, NormSpec::euclidean(), Point{0, 0.5}, Point{3, 0.5}), 6.0, 1e-12);
    EXPECT_THROW(qh_segment_length(punct, NormSpec::euclidean(), Point{-1, 0}, Point{1, 0}), Error);
}

TEST(QhLength, ArcOfCircleAroundPuncture) {
    const auto punct = Domain::punctured({Point{0, 0}});
    PathPolyline arc;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double t = std::numbers::pi * i / n;
        arc.vertices.push_back(Point{2 * std::cos(t), 2 * std::sin(t)});
    }
    EXPECT_NEAR(qh_length(punct, NormSpec::euclidean(), arc), std::numbers::pi, 1e-5);
}

TEST(Numeric, AgreesWithClosedForms) {
    const auto hs = Domain::half_space(Point{0, 1}, 0);
    const auto punct = Domain::punctured({Point{0, 0}});
    const std::vector<std::pair<Point, Point>> hs_pairs{{Point{0, 1}, Point{2, 1}}, {Point{-1, 0.3}, Point{1, 2}}};
    for (const auto& [x, y] : hs_pairs) {
        const double exact = *closed_form_distance(MetricKind::quasihyperbolic, hs, x, y);
        const auto num = qh_distance_numeric(hs, NormSpec::euclidean(), x, y, quick());
        EXPECT_NEAR(num.value / exact, 1.0, 1e-2);
        EXPECT_GE(num.value, exact * (1 - 1e-9));
        validate_path(hs, num.geodesic);
    }
    const std::vector<std::pair<Point, Point>> p_pairs{{Point{1, 0}, Point{0, 2}}, {Point{1, 0}, Point{-1, 0.1}}};
    for (const auto& [x, y] : p_pairs) {
        const double exact = qh_punctured_distance(x, y);
        const auto num = qh_distance_numeric(punct, NormSpec::euclidean(), x, y, quick());
        EXPECT_NEAR(num.value / exact, 1.0, 1e-2);
        EXPECT_GE(num.value, exact * (1 - 1e-9));
        EXPECT_LE(num.value, num.grid_value * (1 + 1e-12));
    }
}

TEST(Numeric, TrivialPathForCoincidentPoints) {
    const auto punct = Domain::punctured({Point{0, 0}});
    const auto num = qh_distance_numeric(punct, NormSpec::euclidean(), Point{1, 1}, Point{1, 1});
    EXPECT_EQ(num.value, 0.0);
    EXPECT_EQ(num.geodesic.size(), 1u);
}

TEST(Numeric, RejectsOutsideEndpoints) {
    const auto sq = Domain::convex_polygon({Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}});
    try {
        qh_distance_numeric(sq, NormSpec::euclidean(), Point{2, 2}, Point{0.5, 0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::outside_domain);
    }
}

TEST(Numeric, DominatesJAcrossFamilies) {
    const std::vector<Domain> domains{
        Domain::punctured({Point{0, 0}, Point{2, 0}}), Domain::unit_ball(Point{0, 0}, 1),
        Domain::slit_plane(Point{0, 0}, Point{-1, 0}),
        Domain::convex_polygon({Point{0, 0}, Point{2, 0}, Point{1, 1.5}})};
    const std::vector<std::pair<Point, Point>> pairs{{Point{0.5, 0.4}, Point{0.7, 0.3}}, {Point{0.6, 0.6}, Point{0.4, 0.2}}};
    for (const auto& d : domains) {
        for (const auto& [x, y] : pairs) {
            const double k = qh_distance_numeric(d, NormSpec::euclidean(), x, y, quick()).value;
            EXPECT_GE(k, j_metric(d, x, y) - 1e-12) << d.kind_name();
        }
    }
}

TEST(Numeric, PuncturedPlaneInPNorm) {
    // Along a coordinate axis every p-norm agrees, so the radial distance is log ratio.
    const auto punct = Domain::punctured({Point{0, 0}});
    const auto num = qh_distance_numeric(punct, NormSpec::p_norm(1), Point{1, 0}, Point{3, 0}, quick());
    EXPECT_NEAR(num.value, std::log(3.0), 1e-2 * std::log(3.0));
}

TEST(Refine, NeverLengthens) {
    const auto punct = Domain::punctured({Point{0, 0}});
    const PathPolyline start{{Point{1, 0}, Point{1, 1}, Point{-1, 1}, Point{-1, 0.01}}};
    const auto out = refine_path(punct, NormSpec::euclidean(), start, 20);
    const double before = qh_length(punct, NormSpec::euclidean(), start);
    const double after = qh_length(punct, NormSpec::euclidean(), out);
    EXPECT_LE(after, before);
    EXPECT_EQ(out.front(), start.front());
    EXPECT_EQ(out.back(), start.back());
    validate_path(punct, out);
}

TEST(Lattice, SourceIsZeroAndDistancesAreUpperBounds) {
    const auto hs = Domain::half_space(Point{0, 1}, 0);
    Lattice lat{Point{-2, 0.25}, 0.25, {17, 12}};
    const Point src{0, 1};
    const auto dist = lattice_distances(hs, NormSpec::euclidean(), lat, src, 3, 4);
    ASSERT_EQ(dist.size(), lat.size());
    std::size_t src_index = 0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        if (distance(lat.point(i), src) < 1e-12) src_index = i;
        const double exact = hyperbolic_halfspace_distance(HalfSpace{Point{0, 1}, 0}, src, lat.point(i));
        // Edge lengths come from 4-point quadrature, so allow its truncation error.
        EXPECT_GE(dist[i], exact * (1 - 1e-5));
    }
    EXPECT_EQ(dist[src_index], 0.0);
}

TEST(Options, Validation) {
    SolverOptions o;
    o.validate();
    o.grid_resolution = 0;
    EXPECT_THROW(o.validate(), Error);
    o = {};
    o.target_rel_error = -1;
    EXPECT_THROW(o.validate(), Error);
}

TEST(Uniformity, SlitPlaneRatioGrowsWithDepth) {
    const auto slit = Domain::slit_plane(Point{0, 0}, Point{-1, 0});
    double prev = 0;
    for (double s : {2.0, 8.0, 32.0}) {
        const auto ur = uniformity_ratio(slit, {{Point{-s, 1}, Point{-s, -1}}}, quick());
        EXPECT_GT(ur.sup_ratio, prev);
        prev = ur.sup_ratio;
    }
}
