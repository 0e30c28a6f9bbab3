#include "bdm/functions.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace {

std::vector<bdm::FunctionModel> structured_corpus() {
    std::vector<bdm::FunctionModel> out;
    for (const auto& f : bdm::builtin_corpus())
        if (f.has_structure()) out.push_back(f);
    return out;
}

} // namespace

TEST(Functions, CorpusMembersAndTags) {
    std::set<std::string> names;
    for (const auto& f : bdm::builtin_corpus()) names.insert(f.name());
    for (const char* n : {"e0", "e1", "e2", "e3", "e4", "abs-half", "hat@0.4", "two-kink", "sqrt", "pow@1", "step-deriv@1/3"})
        EXPECT_TRUE(names.count(n)) << n;
    const auto e2 = bdm::corpus::monomial(2);
    EXPECT_TRUE(e2.has_structure());
    EXPECT_EQ(e2.tag(), bdm::SmoothnessTag::smooth);
    EXPECT_EQ(bdm::corpus::abs_half().tag(), bdm::SmoothnessTag::bv_derivative);
    EXPECT_FALSE(bdm::corpus::power(0.5, "sqrt").has_structure());
}

TEST(Functions, EvaluatorAgreesWithStructure) {
    for (const auto& f : structured_corpus()) EXPECT_LE(bdm::structure_disagreement(f, 1001), 1e-15) << f.name();
}

TEST(Functions, HandValues) {
    const auto tk = bdm::corpus::two_kink();
    EXPECT_NEAR(tk(1.0 / 3), 1.0 / 9, 1e-15);
    EXPECT_NEAR(tk(2.0 / 3), 1.0 / 9 + 1.0 / 3 - 1.0 / 9, 1e-15);
    EXPECT_NEAR(tk(1.0), 1.0 / 3 - 1.0 / 9, 1e-15);
    EXPECT_NEAR(bdm::corpus::hat(bdm::Rational(2, 5), "0.4")(0.4), 1.0, 1e-15);
    EXPECT_NEAR(bdm::corpus::abs_half()(0.2), 0.3, 1e-15);
}

TEST(Functions, StructureMissingThrows) {
    const auto s = bdm::corpus::power(0.5, "sqrt");
    EXPECT_THROW(s.structure(), bdm::StructureMissing);
    EXPECT_THROW(bdm::tv_fx(s, 0.5, 0.2, 0.6), bdm::StructureMissing);
}

TEST(Functions, OneSidedDerivativesAtKink) {
    const auto d = bdm::one_sided_derivatives(bdm::corpus::abs_half(), 0.5);
    EXPECT_EQ(d.left, -1.0);
    EXPECT_EQ(d.right, 1.0);
    const auto s = bdm::one_sided_derivatives(bdm::corpus::monomial(2), 0.25);
    EXPECT_DOUBLE_EQ(s.left, 0.5);
    EXPECT_DOUBLE_EQ(s.right, 0.5);
}

TEST(Functions, IdentitySharedByCopiesOnly) {
    const auto a = bdm::corpus::abs_half();
    const auto b = a;
    EXPECT_EQ(a.identity(), b.identity());
    EXPECT_NE(a.identity(), bdm::corpus::abs_half().identity());
}

TEST(Functions, PiecewiseValidation) {
    using bdm::Rational;
    using P = bdm::RationalPolynomial;
    EXPECT_THROW(bdm::PiecewisePoly({Rational(0), Rational(1, 2)}, {P::x()}), std::invalid_argument);
    EXPECT_THROW(bdm::PiecewisePoly({Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)}, {P::x(), P::x(), P::x()}),
                 std::invalid_argument);
    EXPECT_THROW(bdm::PiecewisePoly({Rational(0), Rational(1)}, {P::x(), P::x()}), std::invalid_argument);
}

TEST(Functions, TvDerivativeOfSmoothAndKinked) {
    // f = x^2: f' = 2t, TV on [a,b] = 2(b-a)
    EXPECT_NEAR(bdm::tv_derivative(bdm::corpus::monomial(2), 0.1, 0.7), 1.2, 1e-14);
    // |x-1/2|: a single jump of 2
    EXPECT_NEAR(bdm::tv_derivative(bdm::corpus::abs_half(), 0.0, 1.0), 2.0, 1e-14);
    // e4: f' = 4t^3 monotone
    EXPECT_NEAR(bdm::tv_derivative(bdm::corpus::monomial(4), 0.0, 1.0), 4.0, 1e-13);
}

TEST(Functions, TvDerivativeIsAdditiveAtBreakpoints) {
    for (const auto& f : structured_corpus()) {
        for (double b : f.interior_breakpoints()) {
            const double whole = bdm::tv_derivative(f, 0.05, 0.95);
            const double split = bdm::tv_derivative(f, 0.05, b) + bdm::tv_derivative(f, b, 0.95);
            EXPECT_NEAR(whole, split, 1e-12) << f.name();
        }
    }
}

TEST(Functions, TvFxMatchesBruteForcePartition) {
    for (const auto& f : structured_corpus()) {
        for (double x : {0.3, 0.5, 0.7}) {
            const std::pair<double, double> intervals[] = {
                {0.0, 1.0}, {x - 0.25, x}, {x, x + 0.25}, {0.05, 0.45}, {x - 0.1, x + 0.1}};
            for (auto [a, b] : intervals) {
                const double got = bdm::tv_fx(f, x, a, b);
                const double ref = oracle::recentred_variation(f, x, a, b);
                EXPECT_NEAR(got, ref, 1e-5) << f.name() << " x=" << x << " [" << a << ',' << b << ']';
            }
        }
    }
}

TEST(Functions, TvFxIsMonotoneInInterval) {
    for (const auto& f : structured_corpus()) {
        const double x = 0.5;
        double prev = 0.0;
        for (double w : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5}) {
            const double v = bdm::tv_fx(f, x, std::max(0.0, x - w), std::min(1.0, x + w));
            EXPECT_GE(v, prev - 1e-12) << f.name();
            prev = v;
        }
    }
}

TEST(Functions, TvFxVanishesForAbsHalfAroundKink) {
    const auto f = bdm::corpus::abs_half();
    EXPECT_EQ(bdm::tv_fx(f, 0.5, 0.1, 0.5), 0.0);
    EXPECT_EQ(bdm::tv_fx(f, 0.5, 0.5, 0.9), 0.0);
    EXPECT_EQ(bdm::tv_fx(f, 0.5, 0.2, 0.8), 0.0);
}

TEST(Functions, GridSupNorm) {
    EXPECT_DOUBLE_EQ(bdm::corpus::abs_half().grid_sup_norm(), 0.5);
    EXPECT_DOUBLE_EQ(bdm::corpus::monomial(3).grid_sup_norm(), 1.0);
}
