#pragma once

#include "bdm/basis.hpp"
#include "bdm/rational_poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bdm {

/// Coefficient sequences of the order-II weights
///   g(x,n) = g2(n) x^2 + g1(n) x + g0(n),   h(x,n) = h0(n) x (1-x).
struct ModWeightConfig {
    std::string name;
    std::function<Rational(int)> g0;
    std::function<Rational(int)> g1;
    std::function<Rational(int)> g2;
    std::function<Rational(int)> h0;

    /// g0 = 3/2, g1 = -n, g2 = n-2, h0 = 2(n-2).
    static ModWeightConfig order2() {
        return {"default",
                [](int) { return Rational(3, 2); },
                [](int n) { return Rational(-n); },
                [](int n) { return Rational(n - 2); },
                [](int n) { return Rational(2 * (n - 2)); }};
    }

    /// g0 = g2 = 1, g1 = -2, h0 = 2: the modified row collapses to p_{n,k}.
    static ModWeightConfig bernstein_reduction() {
        return {"bernstein-reduction",
                [](int) { return Rational(1); },
                [](int) { return Rational(-2); },
                [](int) { return Rational(1); },
                [](int) { return Rational(2); }};
    }

    /// 2 g2(n) - h0(n); zero for both built-in configurations.
    Rational constraint_residual(int n) const { return 2 * g2(n) - h0(n); }

    RationalPolynomial g_poly(int n) const { return RationalPolynomial({g0(n), g1(n), g2(n)}); }
    RationalPolynomial h_poly(int n) const { return RationalPolynomial({Rational(0), h0(n), -h0(n)}); }
};

inline ModWeightConfig config_by_name(const std::string& name) {
    if (name == "default" || name == "order2") return ModWeightConfig::order2();
    if (name == "bernstein-reduction") return ModWeightConfig::bernstein_reduction();
    throw std::invalid_argument("unknown weight configuration '" + name + "'");
}

struct BezierParams {
    double mu = 1.0;

    explicit BezierParams(double m) : mu(m) {
        if (!(m >= 1.0) || !std::isfinite(m)) throw std::invalid_argument("mu must be >= 1");
    }

    bool integral_power() const noexcept { return mu == std::floor(mu) && mu <= 64.0; }
};

namespace detail {

struct WeightValues {
    double g0, g1, g2, h0;

    WeightValues(const ModWeightConfig& cfg, int n)
        : g0(cfg.g0(n).get_d()), g1(cfg.g1(n).get_d()), g2(cfg.g2(n).get_d()), h0(cfg.h0(n).get_d()) {}

    double g(double x) const { return (g2 * x + g1) * x + g0; }
    double h(double x) const { return h0 * x * (1.0 - x); }
};

} // namespace detail

inline double g_eval(const ModWeightConfig& cfg, int n, double x) {
    return detail::WeightValues(cfg, n).g(x);
}

inline double h_eval(const ModWeightConfig& cfg, int n, double x) {
    return detail::WeightValues(cfg, n).h(x);
}

/// p^{M,2}_{n,k}(x) = g(x,n) p_{n-2,k} + h(x,n) p_{n-2,k-1} + g(1-x,n) p_{n-2,k-2}, k = 0..n.
inline std::vector<double> modified_basis_all(const ModWeightConfig& cfg, int n, double x) {
    require_degree(n, 3);
    x = clamp_unit(x);
    const detail::WeightValues w(cfg, n);
    const double gx = w.g(x);
    const double hx = w.h(x);
    const double gy = w.g(1.0 - x);
    const std::vector<double> b = bernstein_all(n - 2, x);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double v = 0.0;
        if (k <= n - 2) v += gx * b[k];
        if (k >= 1 && k - 1 <= n - 2) v += hx * b[k - 1];
        if (k >= 2) v += gy * b[k - 2];
        out[k] = v;
    }
    return out;
}

/// J_{n,k}(x) = sum_{j>=k} p^{M,2}_{n,j}(x) for k = 0..n+1, summed from the
/// top down. J_{n,0} is left as computed, not renormalized to 1.
inline std::vector<double> tail_sums(const ModWeightConfig& cfg, int n, double x) {
    const std::vector<double> row = modified_basis_all(cfg, n, x);
    std::vector<double> tails(row.size() + 1, 0.0);
    for (int k = n; k >= 0; --k) tails[k] = tails[k + 1] + row[k];
    return tails;
}

struct BezierRow {
    std::vector<double> weights;
    /// Set when a non-integer power met a negative tail sum and the signed
    /// power sign(J)|J|^mu was used.
    bool negative_base = false;
};

inline double signed_power(double base, const BezierParams& p, bool& negative_base) {
    if (p.integral_power()) {
        double r = 1.0;
        for (int i = 0; i < static_cast<int>(p.mu); ++i) r *= base;
        return r;
    }
    if (base < 0.0) {
        negative_base = true;
        return -std::pow(-base, p.mu);
    }
    return std::pow(base, p.mu);
}

/// Q^{(mu)}_{n,k}(x) = J_{n,k}(x)^mu - J_{n,k+1}(x)^mu, k = 0..n.
inline BezierRow bezier_weights(const ModWeightConfig& cfg, int n, double mu, double x) {
    const BezierParams p(mu);
    const std::vector<double> tails = tail_sums(cfg, n, x);
    BezierRow row;
    std::vector<double> powered(tails.size());
    for (std::size_t k = 0; k < tails.size(); ++k) powered[k] = signed_power(tails[k], p, row.negative_base);
    row.weights.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row.weights[k] = powered[k] - powered[k + 1];
    return row;
}

struct TailExcursion {
    int n = 0;
    int points = 0;
    int points_outside = 0;
    double min_tail = 0.0;
    double max_tail = 0.0;

    double fraction() const { return points == 0 ? 0.0 : static_cast<double>(points_outside) / points; }
};

/// Counts uniform grid points at which some J_{n,k}(x) leaves [0,1]
/// (beyond a 1e-12 roundoff allowance).
inline TailExcursion measure_tail_excursion(const ModWeightConfig& cfg, int n, int grid_points = 101) {
    TailExcursion r;
    r.n = n;
    r.points = grid_points;
    r.min_tail = 1.0;
    r.max_tail = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = grid_points == 1 ? 0.0 : static_cast<double>(i) / (grid_points - 1);
        const std::vector<double> tails = tail_sums(cfg, n, x);
        bool outside = false;
        for (double j : tails) {
            r.min_tail = std::min(r.min_tail, j);
            r.max_tail = std::max(r.max_tail, j);
            if (j < -1e-12 || j > 1.0 + 1e-12) outside = true;
        }
        if (outside) ++r.points_outside;
    }
    return r;
}

} // namespace bdm
