#include "qhm/constants.hpp"
#include "qhm/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qhm;

namespace {

double g(double p) {
    const double s = std::sqrt(p * p - 1);
    return std::cos(s) + s * std::sin(s);
}

// Plain bisection, independent of the library solver.
double bisect(double target, double lo, double hi) {
    const bool increasing = g(hi) > g(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) < target) == increasing) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Constants, KappaAgainstIndependentBisection) {
    const auto k = solve_kappa();
    ASSERT_TRUE(k.known());
    EXPECT_NEAR(*k.value, bisect(std::exp(-1.0), 1.0, std::numbers::pi), 1e-12);
    EXPECT_NEAR(*k.value, 2.83297, 5e-6);
    EXPECT_LE(std::abs(g(*k.value) - std::exp(-1.0)), 1e-12);
}

TEST(Constants, LambdaAgainstIndependentBisection) {
    const auto l = solve_lambda();
    ASSERT_TRUE(l.known());
    EXPECT_NEAR(*l.value, bisect(0.0, 2.0, std::numbers::pi), 1e-12);
    EXPECT_NEAR(*l.value, 2.97169, 5e-6);
    EXPECT_LE(std::abs(g(*l.value)), 1e-12);
}

TEST(Constants, OrderingOfCriticalRadii) {
    EXPECT_LT(1.0, kappa());
    EXPECT_LT(kappa(), lambda());
    EXPECT_LT(lambda(), std::numbers::pi);
}

TEST(Constants, FunctionAndDerivative) {
    EXPECT_DOUBLE_EQ(critical_radius_function(1.0), 1.0);
    for (double p : {1.2, 2.0, 2.5, 3.0}) {
        const double h = 1e-6;
        const double fd = (g(p + h) - g(p - h)) / (2 * h);
        EXPECT_NEAR(critical_radius_derivative(p), fd, 1e-6);
        EXPECT_NEAR(critical_radius_function(p), g(p), 1e-14);
    }
}

TEST(Constants, SolverRejectsBracketWithoutSignChange) {
    EXPECT_THROW(solve_critical_equation(5.0, 1.0, 2.0), Error);
    EXPECT_THROW(solve_critical_equation(0.0, 2.0, 1.0), Error);
}

TEST(Constants, RadiusTables) {
    const auto& k = radius_table(MetricKind::quasihyperbolic);
    ASSERT_FALSE(k.empty());
    EXPECT_NEAR(*k.front().convex.value, 1.0, 0.0);
    EXPECT_NEAR(*k.front().starlike.value, kappa(), 0.0);
    EXPECT_NEAR(*k.front().close_to_convex.value, lambda(), 0.0);
    bool unknown_seen = false;
    for (const auto& row : k) unknown_seen = unknown_seen || !row.convex.known();
    EXPECT_TRUE(unknown_seen);

    const auto& j = radius_table(MetricKind::distance_ratio);
    bool log2_seen = false;
    for (const auto& row : j) {
        if (row.convex.known() && std::abs(*row.convex.value - std::log(2.0)) < 1e-15) log2_seen = true;
    }
    EXPECT_TRUE(log2_seen);
    EXPECT_THROW(radius_table(MetricKind::hyperbolic_ball), Error);
}

TEST(Constants, SymbolicRadii) {
    EXPECT_DOUBLE_EQ(parse_radius("log2"), std::log(2.0));
    EXPECT_DOUBLE_EQ(parse_radius("log1+sqrt2"), std::log(1 + std::sqrt(2.0)));
    EXPECT_DOUBLE_EQ(parse_radius("log1+sqrt3"), std::log(1 + std::sqrt(3.0)));
    EXPECT_DOUBLE_EQ(parse_radius("kappa"), kappa());
    EXPECT_DOUBLE_EQ(parse_radius("lambda"), lambda());
    EXPECT_DOUBLE_EQ(parse_radius("pi/2"), std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(parse_radius("0.75"), 0.75);
    EXPECT_THROW(parse_radius("banana"), Error);
    EXPECT_THROW(parse_radius("-1"), Error);
}
