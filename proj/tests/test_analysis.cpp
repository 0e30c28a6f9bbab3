#include "bdm/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

bdm::FunctionModel constant_five() {
    return bdm::FunctionModel::from_piecewise("five", bdm::PiecewisePoly::single(bdm::RationalPolynomial::constant(5)),
                                              bdm::SmoothnessTag::smooth);
}

// Least-squares slope written out independently.
double ls_slope(const std::vector<double>& ns, const std::vector<double>& es) {
    const double m = static_cast<double>(ns.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double lx = std::log(ns[i]), ly = std::log(es[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

TEST(Analysis, SupErrorOnReproducedFunctions) {
    EXPECT_LE(bdm::sup_error(bdm::corpus::monomial(1), bdm::OperatorParams(17, 1.0)), 1e-11);
    EXPECT_LE(bdm::sup_error(constant_five(), bdm::OperatorParams(17, 2.5)), 1e-12);
    EXPECT_THROW(bdm::sup_error(constant_five(), bdm::OperatorParams(5, 1.0), 2), std::invalid_argument);
}

TEST(Analysis, SupErrorOfQuadraticIsClosedForm) {
    for (int n : {10, 50, 100})
        EXPECT_NEAR(bdm::sup_error(bdm::corpus::monomial(2), bdm::OperatorParams(n, 1.0)), 3.0 / ((n + 2.0) * (n + 3.0)),
                    1e-10);
    const auto s = bdm::measure_sup_error(bdm::corpus::monomial(2), bdm::OperatorParams(10, 1.0));
    EXPECT_NEAR(s.value, 3.0 / 156, 1e-14);
}

TEST(Analysis, SupErrorIndependentOfThreadCount) {
    const auto f = bdm::corpus::abs_half();
    const bdm::OperatorParams p(64, 1.5);
    EXPECT_EQ(bdm::measure_sup_error(f, p, 201, 1).value, bdm::measure_sup_error(f, p, 201, 4).value);
}

TEST(Analysis, ModulusProperties) {
    EXPECT_EQ(bdm::dt_modulus(constant_five(), 0.3), 0.0);
    for (double t : {0.05, 0.2, 0.7}) EXPECT_NEAR(bdm::dt_modulus(bdm::corpus::monomial(1), t), t / 2, 1e-3);
    const auto f = bdm::corpus::two_kink();
    double prev = 0.0;
    for (double t : {0.01, 0.03, 0.1, 0.3, 1.0}) {
        const double w = bdm::dt_modulus(f, t);
        EXPECT_GE(w, prev);
        prev = w;
    }
    EXPECT_THROW(bdm::dt_modulus(f, 0.0), std::invalid_argument);
    EXPECT_THROW(bdm::dt_modulus(f, 0.5, 8, 100), std::invalid_argument);
}

TEST(Analysis, ModulusSubadditive) {
    const auto f = bdm::corpus::abs_half();
    const auto g = bdm::corpus::monomial(3);
    const auto sum = bdm::FunctionModel::from_evaluator("sum", [&](double x) { return f(x) + g(x); },
                                                        bdm::SmoothnessTag::lipschitz);
    for (double t : {0.05, 0.3}) EXPECT_LE(bdm::dt_modulus(sum, t), bdm::dt_modulus(f, t) + bdm::dt_modulus(g, t) + 1e-12);
}

TEST(Analysis, DirectConstantEdgeCases) {
    const auto rows = bdm::direct_bound_constant(bdm::corpus::monomial(1), 1.0, {16, 64});
    for (const auto& r : rows) EXPECT_LE(r.empirical_c, 1e-9);
    const auto c = bdm::direct_bound_constant(constant_five(), 1.0, {16});
    EXPECT_EQ(c[0].empirical_c, 0.0);
    const auto e2 = bdm::direct_bound_constant(bdm::corpus::monomial(2), 1.0, {16, 64, 256});
    EXPECT_GT(e2[0].empirical_c, e2[1].empirical_c);
    EXPECT_GT(e2[1].empirical_c, e2[2].empirical_c);
}

TEST(Analysis, FitRateSynthetic) {
    std::vector<std::pair<double, double>> pairs;
    for (double n : {10.0, 20.0, 40.0, 80.0}) pairs.emplace_back(n, 3.0 / (n * n));
    const auto fit = bdm::fit_rate(pairs);
    EXPECT_NEAR(fit.slope, -2.0, 1e-9);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);

    pairs.emplace_back(160.0, 0.0);
    EXPECT_EQ(bdm::fit_rate(pairs).dropped, 1);
    EXPECT_THROW(bdm::fit_rate({{1.0, 1.0}, {2.0, 0.0}, {3.0, 0.5}}), std::invalid_argument);
}

TEST(Analysis, FitRateOfQuadraticMatchesExactErrorLaw) {
    // Measured errors follow 3/((n+2)(n+3)); the fitted slope must equal the
    // least-squares slope of that law over the same ladder.
    const std::vector<double> ns{16, 32, 64, 128, 256};
    std::vector<double> law;
    std::vector<std::pair<double, double>> pairs;
    for (double n : ns) {
        law.push_back(3.0 / ((n + 2) * (n + 3)));
        pairs.emplace_back(n, bdm::sup_error(bdm::corpus::monomial(2), bdm::OperatorParams(static_cast<int>(n), 1.0)));
    }
    EXPECT_NEAR(bdm::fit_rate(pairs).slope, ls_slope(ns, law), 1e-9);
}

TEST(Analysis, AbsHalfRateNearHalf) {
    std::vector<std::pair<double, double>> pairs;
    for (int n : {16, 32, 64, 128, 256})
        pairs.emplace_back(n, bdm::sup_error(bdm::corpus::abs_half(), bdm::OperatorParams(n, 1.0)));
    EXPECT_LE(bdm::fit_rate(pairs).slope, -0.35);
}

TEST(Analysis, LipParamsValidate) {
    EXPECT_THROW(bdm::LipParams(0.0, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(bdm::LipParams(1.5, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(bdm::LipParams(0.5, -1, 1, 1), std::invalid_argument);
    EXPECT_THROW(bdm::LipParams(0.5, 0, 0, 1), std::invalid_argument);
    EXPECT_THROW(bdm::LipParams(0.5, 0, 1, 0), std::invalid_argument);
}

TEST(Analysis, LipBoundForLinearAndSqrt) {
    const auto e1 = bdm::lip_bound(bdm::corpus::monomial(1), bdm::LipParams(1, 0, 1, 1), bdm::OperatorParams(50, 1.0), 0.3);
    EXPECT_LE(e1.lhs, 1e-12);
    EXPECT_GE(e1.slack, 0.0);

    const auto sqrt_f = bdm::corpus::power(0.5, "sqrt");
    const double m = bdm::lip_class_constant(sqrt_f, 0.5, 0, 1);
    EXPECT_GT(m, 0.5);
    EXPECT_LE(m, 1.0 + 1e-12);
    const auto r = bdm::lip_bound(sqrt_f, bdm::LipParams(0.5, 0, 1, m), bdm::OperatorParams(100, 1.0), 0.25);
    EXPECT_LE(r.lhs, r.rhs);
}

TEST(Analysis, LipRhsScalesWithZeta) {
    const auto f = bdm::corpus::monomial(1);
    for (double zeta : {0.5, 1.0}) {
        const bdm::LipParams lip(zeta, 0.3, 1.0, 1.0);
        const double a = bdm::lip_bound(f, lip, bdm::OperatorParams(1000, 1.0), 0.4).rhs;
        const double b = bdm::lip_bound(f, lip, bdm::OperatorParams(4000, 1.0), 0.4).rhs;
        EXPECT_NEAR(a / b, std::pow(2.0, zeta), 0.02 * std::pow(2.0, zeta));
    }
}

TEST(Analysis, BvHandValueAtSymmetricPoint) {
    const auto f = bdm::corpus::abs_half();
    for (int n : {100, 400}) {
        const auto proof = bdm::bv_rhs(f, bdm::OperatorParams(n, 1.0), 0.5, bdm::BvVariant::proof);
        EXPECT_NEAR(proof.rhs, 2.0 * 0.5 / std::sqrt(n + 2.0), 1e-12);
        EXPECT_LE(proof.lhs, proof.rhs);
        const auto stmt = bdm::bv_rhs(f, bdm::OperatorParams(n, 1.0), 0.5, bdm::BvVariant::statement);
        EXPECT_NEAR(stmt.rhs, 2.0 * 0.25 / (n + 2.0), 1e-14);
        EXPECT_EQ(stmt.variant, "bv-statement");
        EXPECT_NEAR(stmt.slack, stmt.rhs - stmt.lhs, 0.0);
    }
    // mu = 2: first group (1/3)|1 - 2| + 2
    const auto mu2 = bdm::bv_rhs(f, bdm::OperatorParams(100, 2.0), 0.5, bdm::BvVariant::proof);
    EXPECT_NEAR(mu2.rhs, (1.0 / 3 + 2.0) * 0.5 / std::sqrt(102.0), 1e-12);
}

TEST(Analysis, BvRhsOfQuadraticHasPositiveVariationTerms) {
    // f' = 2t: (f')_x varies by 2|interval| on each side.
    const auto f = bdm::corpus::monomial(2);
    const int n = 100;
    const double x = 0.5;
    const auto r = bdm::bv_rhs(f, bdm::OperatorParams(n, 1.0), x, bdm::BvVariant::statement);
    const double first = (0.5 * 2.0) * (1.0 / (n + 2)) * 0.25;
    double left = 0, right = 0;
    for (int k = 1; k <= 10; ++k) {
        left += 2 * (x / k);
        right += 2 * ((1 - x) / k);
    }
    const double rn = 10.0;
    const double expected = first + (1.0 / (n + 2)) * 0.25 / (x * x) * left + x / rn * 2 * (x / rn) +
                            (1.0 / (n + 2)) * 0.25 / (1 - x) * right + (1 - x) / rn * 2 * ((1 - x) / rn);
    EXPECT_NEAR(r.rhs, expected, 1e-12);
}

TEST(Analysis, BvRhsNonincreasingAcrossSqrtSteps) {
    for (const auto& f : {bdm::corpus::two_kink(), bdm::corpus::monomial(3), bdm::corpus::abs_half()}) {
        for (auto v : {bdm::BvVariant::statement, bdm::BvVariant::proof}) {
            double prev = 1e300;
            for (int s = 2; s <= 20; ++s) {
                const int n = s * s;
                const double r = bdm::bv_rhs_value(f, bdm::OperatorParams(n, 1.0), 0.4, v);
                EXPECT_GE(r, 0.0);
                EXPECT_LE(r, prev + 1e-15) << f.name() << " n=" << n;
                prev = r;
            }
        }
    }
}

TEST(Analysis, BvNeedsStructure) {
    EXPECT_THROW(bdm::bv_rhs(bdm::corpus::power(0.5, "sqrt"), bdm::OperatorParams(10, 1.0), 0.5, bdm::BvVariant::proof),
                 bdm::StructureMissing);
    EXPECT_THROW(bdm::bv_rhs(bdm::corpus::abs_half(), bdm::OperatorParams(10, 1.0), 1.0, bdm::BvVariant::proof),
                 bdm::DomainError);
}

TEST(Analysis, IntegerSquareRoot) {
    for (int n = 0; n < 2000; ++n) {
        const int s = bdm::isqrt(n);
        EXPECT_LE(s * s, n);
        EXPECT_GT((s + 1) * (s + 1), n);
    }
}
