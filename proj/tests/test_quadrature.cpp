#include <gtest/gtest.h>

#include <cmath>

#include "lfem/quadrature.hpp"
#include "oracles.hpp"

namespace q = lfem::quadrature;

namespace {

double integrate_monomial(const q::TriangleRule& rule, int a, int b) {
    // Reference triangle (0,0),(1,0),(0,1): area 1/2, x = l1, y = l2.
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * std::pow(rule.points[i][1], a) * std::pow(rule.points[i][2], b);
    return 0.5 * s;
}

void expect_exact_to_degree(const q::TriangleRule& rule, int degree) {
    for (int a = 0; a <= degree; ++a)
        for (int b = 0; a + b <= degree; ++b)
            EXPECT_NEAR(integrate_monomial(rule, a, b), oracle::monomial_integral(a, b), 1e-15)
                << "x^" << a << " y^" << b;
}

}  // namespace

TEST(Quadrature, WeightsSumToOneAndPointsAreBarycentric) {
    for (const auto* rule : {&q::centroid_rule(), &q::degree4_rule(), &q::degree6_rule()}) {
        double w = 0.0;
        for (std::size_t i = 0; i < rule->size(); ++i) {
            w += rule->weights[i];
            const auto& p = rule->points[i];
            EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
            for (double c : p) EXPECT_GE(c, 0.0);
        }
        EXPECT_NEAR(w, 1.0, 1e-15);
    }
}

TEST(Quadrature, RuleSizes) {
    EXPECT_EQ(q::centroid_rule().size(), 1u);
    EXPECT_EQ(q::degree4_rule().size(), 6u);
    EXPECT_EQ(q::degree6_rule().size(), 12u);
    EXPECT_EQ(q::gauss2_line_rule().size(), 2u);
}

TEST(Quadrature, CentroidExactForLinears) { expect_exact_to_degree(q::centroid_rule(), 1); }
TEST(Quadrature, Degree4Exact) { expect_exact_to_degree(q::degree4_rule(), 4); }
TEST(Quadrature, Degree6Exact) { expect_exact_to_degree(q::degree6_rule(), 6); }

TEST(Quadrature, Degree4IsNotExactForAllQuintics) {
    double worst = 0.0;
    for (int a = 0; a <= 5; ++a)
        worst = std::max(worst, std::abs(integrate_monomial(q::degree4_rule(), a, 5 - a) -
                                         oracle::monomial_integral(a, 5 - a)));
    EXPECT_GT(worst, 1e-6);
}

TEST(Quadrature, OracleRuleExactToDegreeTen) { expect_exact_to_degree(oracle::collapsed_gauss_rule(), 10); }

TEST(Quadrature, LibraryRulesAgreeWithOracleOnSmoothIntegrand) {
    const auto ref = oracle::collapsed_gauss_rule();
    auto integrate = [](const q::TriangleRule& r) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            s += r.weights[i] * std::exp(r.points[i][1]) * std::cos(r.points[i][2]);
        return 0.5 * s;
    };
    const double exact = integrate(ref);
    EXPECT_NEAR(integrate(q::degree6_rule()), exact, 1e-8);
    EXPECT_NEAR(integrate(q::degree4_rule()), exact, 1e-5);
}

TEST(Quadrature, GaussLineExactForCubics) {
    const auto& r = q::gauss2_line_rule();
    for (int k = 0; k <= 3; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i], k);
        EXPECT_NEAR(s, 1.0 / (k + 1), 1e-15) << "t^" << k;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i], 4);
    EXPECT_GT(std::abs(s - 0.2), 1e-4);
}
