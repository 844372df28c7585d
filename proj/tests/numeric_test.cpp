#include "cubsym/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace cubsym {
namespace {

namespace cv = cuboid_var;

// Reference stream: splitmix64 seeded with zero. These are the published
// outputs of the algorithm, so any drift in the implementation shows up.
TEST(SplitMix64Test, ReferenceStream) {
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafull);
    EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ull);
    EXPECT_EQ(rng.next(), 0x06c45d188009454full);
}

TEST(SplitMix64Test, UnitRangeAndDeterminism) {
    SplitMix64 a(42), b(42), c(43);
    double mean = 0.0;
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        double u = a.unit();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        mean += u;
        EXPECT_EQ(u, b.unit());
        if (u != c.unit()) differs = true;
    }
    mean /= 1000.0;
    EXPECT_NEAR(mean, 0.5, 0.05);
    EXPECT_TRUE(differs);
}

TEST(SplitMix64Test, UniformCoversInterval) {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        double u = rng.uniform(0.1, 10.0);
        EXPECT_GE(u, 0.1);
        EXPECT_LT(u, 10.0);
    }
}

class NumericTest : public ::testing::Test {
   protected:
    static const CuboidSystem& sys() {
        static const CuboidSystem s;
        return s;
    }
    static const std::vector<FactorEquation>& catalog() {
        static const std::vector<FactorEquation> c = factor_catalog(sys());
        return c;
    }
};

TEST_F(NumericTest, EvaluateMatchesHandComputation) {
    Polynomial p = parse_polynomial("E10^2 - 2*E20 - L^2", sys().table());
    std::vector<double> v(16, 0.0);
    v[cv::E10] = 5.0;
    v[cv::E20] = 8.0;
    v[cv::L] = 3.0;
    EXPECT_DOUBLE_EQ(evaluate(p, v), 25.0 - 16.0 - 9.0);
    EXPECT_DOUBLE_EQ(relative_residual(p, v), 0.0);
    v[cv::L] = 0.0;
    // |25 - 16| / (1 + 25 + 16)
    EXPECT_DOUBLE_EQ(relative_residual(p, v), 9.0 / 42.0);
}

TEST_F(NumericTest, ExactEdgeTripleGivesTinyResiduals) {
    // Edges (1, 2, 2): L = 3 and every derived quantity is algebraically
    // consistent, so all ten residuals sit at rounding-noise level.
    std::vector<double> v(16, 0.0);
    v[cv::x1] = 1.0;
    v[cv::x2] = 2.0;
    v[cv::x3] = 2.0;
    v[cv::d1] = std::sqrt(8.0);
    v[cv::d2] = std::sqrt(5.0);
    v[cv::d3] = std::sqrt(5.0);
    v[cv::L] = 3.0;
    for (const auto& [var, expansion] : sys().elementary_substitution())
        v[var] = evaluate(expansion, v);
    EXPECT_DOUBLE_EQ(v[cv::E10], 5.0);
    EXPECT_DOUBLE_EQ(v[cv::E20], 8.0);
    EXPECT_DOUBLE_EQ(v[cv::E30], 4.0);
    for (const FactorEquation& f : catalog()) {
        double r = relative_residual(f.lhs, v);
        EXPECT_LT(r, 1e-12) << f.id;
    }
    // The x-side relation is exact in doubles at this point.
    EXPECT_DOUBLE_EQ(relative_residual(catalog()[0].lhs, v), 0.0);
}

TEST_F(NumericTest, SampleSatisfiesDerivedConstraints) {
    SplitMix64 rng(99);
    for (int i = 0; i < 10; ++i) {
        std::vector<double> v = cuboid_sample(sys(), rng);
        for (unsigned x : {cv::x1, cv::x2, cv::x3}) {
            EXPECT_GE(v[x], 0.1);
            EXPECT_LT(v[x], 10.0);
        }
        EXPECT_NEAR(v[cv::d1] * v[cv::d1],
                    v[cv::x2] * v[cv::x2] + v[cv::x3] * v[cv::x3], 1e-12);
        EXPECT_NEAR(v[cv::L] * v[cv::L],
                    v[cv::x1] * v[cv::x1] + v[cv::x2] * v[cv::x2] +
                        v[cv::x3] * v[cv::x3],
                    1e-11);
        EXPECT_NEAR(v[cv::E10], v[cv::x1] + v[cv::x2] + v[cv::x3], 1e-12);
        // E11 sums x_i*d_j over distinct columns, so the paired products
        // are the complement within the full product of the two sums.
        double paired = v[cv::x1] * v[cv::d1] + v[cv::x2] * v[cv::d2] +
                        v[cv::x3] * v[cv::d3];
        EXPECT_NEAR(v[cv::E11], v[cv::E10] * v[cv::E01] - paired, 1e-9);
    }
}

TEST_F(NumericTest, SpotCheckThousandSamples) {
    NumericReport report = numeric_spot_check(sys(), catalog(), 1000, 42);
    EXPECT_EQ(report.samples, 1000u);
    EXPECT_EQ(report.seed, 42u);
    ASSERT_EQ(report.checks.size(), 10u);
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        EXPECT_EQ(report.checks[i].id, catalog()[i].id);
        EXPECT_LT(report.checks[i].max_residual, 1e-9) << catalog()[i].id;
        EXPECT_GT(report.checks[i].max_residual, 0.0) << catalog()[i].id;
    }
    EXPECT_LT(report.max_residual, 1e-9);
    EXPECT_TRUE(report.within(1e-9));
    EXPECT_FALSE(report.within(1e-30));
}

TEST_F(NumericTest, ReportsAreBitwiseReproducible) {
    NumericReport a = numeric_spot_check(sys(), catalog(), 200, 7);
    NumericReport b = numeric_spot_check(sys(), catalog(), 200, 7);
    EXPECT_EQ(a.max_residual, b.max_residual);
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        EXPECT_EQ(a.checks[i].max_residual, b.checks[i].max_residual);
    NumericReport c = numeric_spot_check(sys(), catalog(), 200, 8);
    EXPECT_NE(a.max_residual, c.max_residual);
    EXPECT_THROW(numeric_spot_check(sys(), catalog(), 0, 7), UsageError);
}

}  // namespace
}  // namespace cubsym
