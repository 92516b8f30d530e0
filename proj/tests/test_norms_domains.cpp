#include "qhm/domain.hpp"
#include "qhm/error.hpp"
#include "qhm/norm.hpp"
#include "qhm/path.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qhm;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void expect_code(ErrorCode code, auto&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(Norm, Values) {
    const Point v{3, -4};
    EXPECT_DOUBLE_EQ(NormSpec::euclidean()(v), 5.0);
    EXPECT_DOUBLE_EQ(NormSpec::p_norm(1)(v), 7.0);
    EXPECT_DOUBLE_EQ(NormSpec::p_norm(kInf)(v), 4.0);
    EXPECT_NEAR(NormSpec::p_norm(3)(v), std::cbrt(27.0 + 64.0), 1e-14);
    EXPECT_TRUE(NormSpec::p_norm(2).is_euclidean());
}

TEST(Norm, RejectsSubunitExponent) {
    expect_code(ErrorCode::invalid_input, [] { NormSpec::p_norm(0.5); });
    expect_code(ErrorCode::invalid_input, [] { NormSpec::p_norm(std::nan("")); });
}

TEST(Norm, TriangleInequalityAndHomogeneity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0, kInf}) {
        const auto n = NormSpec::p_norm(p);
        for (int i = 0; i < 200; ++i) {
            const Point a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
            const double s = u(rng);
            EXPECT_LE(n(a + b), n(a) + n(b) + 1e-12);
            EXPECT_NEAR(n(s * a), std::abs(s) * n(a), 1e-12 * (1 + n(a)));
        }
    }
}

TEST(Domain, HalfSpaceDistance) {
    const auto d = Domain::half_space(Point{0, 1}, 0.5);
    EXPECT_TRUE(d.contains(Point{3, 1}));
    EXPECT_FALSE(d.contains(Point{3, 0.5}));
    EXPECT_DOUBLE_EQ(d.boundary_distance(Point{-7, 2}), 1.5);
    expect_code(ErrorCode::outside_domain, [&] { d.boundary_distance(Point{0, 0}); });
    EXPECT_EQ(d.boundary_distance_or_zero(NormSpec::euclidean(), Point{0, 0}), 0.0);
}

TEST(Domain, PuncturedDistanceInNorm) {
    const auto d = Domain::punctured({Point{0, 0}, Point{4, 0}});
    EXPECT_DOUBLE_EQ(d.boundary_distance(Point{1, 1}), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(d.boundary_distance(NormSpec::p_norm(1), Point{3, 1}), 2.0);
    EXPECT_DOUBLE_EQ(d.boundary_distance(NormSpec::p_norm(kInf), Point{3, 2}), 2.0);
    EXPECT_FALSE(d.contains(Point{4, 0}));
    EXPECT_FALSE(d.segment_inside(Point{-1, 0}, Point{1, 0}));
    EXPECT_TRUE(d.segment_inside(Point{-1, 1e-3}, Point{1, 1e-3}));
}

TEST(Domain, UnitBallAndPolygon) {
    const auto b = Domain::unit_ball(Point{1, 1}, 2);
    EXPECT_DOUBLE_EQ(b.boundary_distance(Point{1, 2}), 1.0);
    EXPECT_TRUE(b.bounded());
    const auto sq = Domain::convex_polygon({Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}});
    EXPECT_DOUBLE_EQ(sq.boundary_distance(Point{0.3, 0.6}), 0.3);
    EXPECT_DOUBLE_EQ(sq.boundary_distance(Point{0.5, 0.9}), 0.1);
    EXPECT_FALSE(sq.contains(Point{1, 0.5}));
    expect_code(ErrorCode::unsupported_combination,
                [&] { sq.boundary_distance(NormSpec::p_norm(1), Point{0.5, 0.5}); });
}

TEST(Domain, PolygonMustBeConvexAndCounterClockwise) {
    expect_code(ErrorCode::invalid_input,
                [] { Domain::convex_polygon({Point{0, 0}, Point{0, 1}, Point{1, 1}, Point{1, 0}}); });
    expect_code(ErrorCode::invalid_input, [] {
        Domain::convex_polygon({Point{0, 0}, Point{2, 0}, Point{1, 0.2}, Point{2, 2}, Point{0, 2}});
    });
}

TEST(Domain, SlitPlane) {
    const auto s = Domain::slit_plane(Point{0, 0}, Point{-1, 0});
    EXPECT_FALSE(s.contains(Point{-2, 0}));
    EXPECT_TRUE(s.contains(Point{2, 0}));
    EXPECT_DOUBLE_EQ(s.boundary_distance(Point{-3, 0.5}), 0.5);
    EXPECT_DOUBLE_EQ(s.boundary_distance(Point{3, 4}), 5.0);
    EXPECT_FALSE(s.segment_inside(Point{-1, 1}, Point{-1, -1}));
    EXPECT_TRUE(s.segment_inside(Point{1, 1}, Point{1, -1}));
}

TEST(Domain, InvalidConstruction) {
    expect_code(ErrorCode::invalid_input, [] { Domain::punctured({}); });
    expect_code(ErrorCode::invalid_input, [] { Domain::unit_ball(Point{0, 0}, -1); });
    expect_code(ErrorCode::invalid_input, [] { Domain::half_space(Point{0, 0}, 0); });
    expect_code(ErrorCode::invalid_input, [] { Domain::punctured({Point{0, 0}, Point{0, 0, 0}}); });
}

TEST(Domain, DimensionMismatch) {
    const auto d = Domain::punctured({Point{0, 0}});
    expect_code(ErrorCode::invalid_input, [&] { d.contains(Point{1, 0, 0}); });
}

// Boundary distance is 1-Lipschitz in every family.
TEST(Domain, BoundaryDistanceIsLipschitz) {
    const std::vector<Domain> domains{
        Domain::half_space(Point{0.6, 0.8}, -1), Domain::punctured({Point{0, 0}, Point{1, 2}}),
        Domain::unit_ball(Point{0, 0}, 3), Domain::slit_plane(Point{1, 0}, Point{0, 1}),
        Domain::convex_polygon({Point{-2, -2}, Point{3, -2}, Point{3, 3}, Point{-2, 3}})};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.9, 1.9);
    for (const auto& d : domains) {
        for (int i = 0; i < 300; ++i) {
            const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
            const double da = d.boundary_distance_or_zero(NormSpec::euclidean(), a);
            const double db = d.boundary_distance_or_zero(NormSpec::euclidean(), b);
            EXPECT_LE(std::abs(da - db), distance(a, b) + 1e-12) << d.kind_name();
        }
    }
}

TEST(Path, Validation) {
    const auto d = Domain::punctured({Point{0, 0}});
    expect_code(ErrorCode::invalid_input, [&] { validate_path(d, PathPolyline{}); });
    expect_code(ErrorCode::path_exits_domain,
                [&] { validate_path(d, PathPolyline{{Point{-1, 0}, Point{1, 0}}}); });
    expect_code(ErrorCode::invalid_input,
                [&] { validate_path(d, PathPolyline{{Point{1, 0}, Point{1, 0}, Point{2, 0}}}); });
    validate_path(d, PathPolyline{{Point{1, 0}}});
    EXPECT_DOUBLE_EQ((PathPolyline{{Point{0, 0}, Point{3, 4}, Point{3, 5}}}).norm_length(), 6.0);
}
