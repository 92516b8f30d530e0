#include "qhm/error.hpp"
#include "qhm/moduli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace qhm;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Inner-product space moduli.
double delta_euclid(double e) { return 1 - std::sqrt(1 - e * e / 4); }
double rho_euclid(double t) { return std::sqrt(1 + t * t) - 1; }
// For 2 <= p < inf the l^p modulus of convexity is 1 - (1 - (e/2)^p)^(1/p).
double delta_lp(double p, double e) { return 1 - std::pow(1 - std::pow(e / 2, p), 1 / p); }

}  // namespace

TEST(Moduli, EuclideanConvexity) {
    for (double e : {0.1, 0.5, 1.0, 1.5, 2.0}) {
        const auto m = modulus_of_convexity(NormSpec::euclidean(), e);
        EXPECT_NEAR(m.value, delta_euclid(e), 1e-8) << e;
        const auto& [x, y] = m.witness;
        EXPECT_NEAR(length(x), 1, 1e-12);
        EXPECT_NEAR(length(y), 1, 1e-12);
        EXPECT_NEAR(distance(x, y), e, 1e-8);
    }
    EXPECT_NEAR(modulus_of_convexity(NormSpec::euclidean(), 1).value, 1 - std::sqrt(3.0) / 2, 1e-4);
}

TEST(Moduli, EuclideanSmoothness) {
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        EXPECT_NEAR(modulus_of_smoothness(NormSpec::euclidean(), t).value, rho_euclid(t), 1e-8) << t;
    }
}

TEST(Moduli, LpConvexityMatchesClarksonBound) {
    for (double p : {3.0, 4.0}) {
        const auto n = NormSpec::p_norm(p);
        for (double e : {0.2, 0.8, 1.4}) EXPECT_NEAR(modulus_of_convexity(n, e).value, delta_lp(p, e), 1e-6);
    }
}

TEST(Moduli, SupAndTaxicabNorms) {
    const auto l1 = NormSpec::p_norm(1);
    for (double t : {0.1, 0.5, 1.0}) EXPECT_NEAR(modulus_of_smoothness(l1, t).value, t, 1e-3);
    const auto linf = NormSpec::p_norm(kInf);
    for (double e : {0.3, 1.0, 1.9}) EXPECT_NEAR(modulus_of_convexity(linf, e).value, 0.0, 1e-9);
}

TEST(Moduli, MonotoneInParameter) {
    const auto n = NormSpec::p_norm(1.5);
    double prev = -1;
    for (double e = 0.1; e <= 2.0; e += 0.3) {
        const double v = modulus_of_convexity(n, e).value;
        EXPECT_GE(v, prev - 1e-12);
        prev = v;
    }
}

TEST(Moduli, InvalidParameters) {
    EXPECT_THROW(modulus_of_convexity(NormSpec::euclidean(), 0), Error);
    EXPECT_THROW(modulus_of_convexity(NormSpec::euclidean(), 2.5), Error);
    EXPECT_THROW(modulus_of_smoothness(NormSpec::euclidean(), -1), Error);
}

TEST(Moduli, UnitSpherePoints) {
    for (double p : {1.0, 1.5, 3.0, kInf}) {
        const auto n = NormSpec::p_norm(p);
        for (double th = 0; th < 6.28; th += 0.7) EXPECT_NEAR(n(unit_sphere_point(n, th)), 1.0, 1e-12);
    }
}

TEST(PowerType, Exponents) {
    std::vector<std::pair<double, double>> conv, smooth, l1;
    for (double e : {0.05, 0.1, 0.2, 0.4}) {
        conv.emplace_back(e, modulus_of_convexity(NormSpec::euclidean(), e).value);
        smooth.emplace_back(e, modulus_of_smoothness(NormSpec::euclidean(), e).value);
        l1.emplace_back(e, modulus_of_smoothness(NormSpec::p_norm(1), e).value);
    }
    const auto c = power_type_fit(conv, ModulusKind::convexity);
    EXPECT_NEAR(c.p, 2.0, 0.05);
    EXPECT_NEAR(c.K, 0.125, 0.01);
    EXPECT_NEAR(power_type_fit(smooth, ModulusKind::smoothness).p, 2.0, 0.05);
    EXPECT_NEAR(power_type_fit(l1, ModulusKind::smoothness).p, 1.0, 0.05);
}

TEST(PowerType, Rejections) {
    std::vector<std::pair<double, double>> zeros;
    for (double e : {0.1, 0.2, 0.4, 0.8}) zeros.emplace_back(e, modulus_of_convexity(NormSpec::p_norm(kInf), e).value);
    try {
        power_type_fit(zeros, ModulusKind::convexity);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::not_power_type);
    }
    // Linear growth is not a convexity power type.
    EXPECT_THROW(power_type_fit({{0.1, 0.1}, {0.2, 0.2}, {0.4, 0.4}, {0.8, 0.8}}, ModulusKind::convexity), Error);
    EXPECT_THROW(power_type_fit({{0.1, 0.1}, {0.2, 0.2}}, ModulusKind::smoothness), Error);
}

namespace {

PathPolyline circular_arc(double radius, double angle, int n = 64) {
    PathPolyline p;
    for (int i = 0; i <= n; ++i) {
        const double t = angle * i / n;
        p.vertices.push_back(Point{radius * std::cos(t), radius * std::sin(t)});
    }
    return p;
}

}  // namespace

TEST(LemmaMargin, EqualPathsGiveZero) {
    const auto arc = circular_arc(1.5, 0.08);
    const auto m = qhlemma_margin(NormSpec::euclidean(), AnnulusPathPair{arc, arc, 0.1});
    EXPECT_NEAR(m.margin, 0.0, 1e-9);
    EXPECT_TRUE(m.warning.empty());
}

TEST(LemmaMargin, DivergingPathsHaveNonNegativeMargin) {
    const auto a = circular_arc(1.5, 0.05);
    PathPolyline b{{Point{1.5, 0}, Point{1.52, 0.03}, Point{1.53, 0.07}}};
    const auto m = qhlemma_margin(NormSpec::euclidean(), AnnulusPathPair{a, b, 0.1});
    EXPECT_GE(m.margin, -1e-6);
    EXPECT_LE(m.t1, m.t2);
}

TEST(LemmaMargin, Preconditions) {
    const auto a = circular_arc(1.5, 0.05);
    const auto shifted = circular_arc(1.6, 0.05);
    EXPECT_THROW(qhlemma_margin(NormSpec::euclidean(), AnnulusPathPair{a, shifted, 0.1}), Error);
    const auto longer = circular_arc(1.5, 0.09);
    EXPECT_THROW(qhlemma_margin(NormSpec::euclidean(), AnnulusPathPair{longer, a, 0.1}), Error);
    const auto m = qhlemma_margin(NormSpec::p_norm(1.2), AnnulusPathPair{a, a, 0.1});
    EXPECT_FALSE(m.warning.empty());
}

TEST(LemmaMargin, InterpolatedModulusTracksDirectValue) {
    for (double e : {0.0, 0.37, 1.0, 2.0}) {
        EXPECT_NEAR(interpolated_convexity_modulus(NormSpec::euclidean(), e), delta_euclid(e), 1e-4);
    }
}
