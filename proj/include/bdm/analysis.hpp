#pragma once

#include "bdm/functions.hpp"
#include "bdm/operator.hpp"
#include "bdm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bdm {

inline constexpr int kDefaultSupGrid = 201;
inline constexpr int kDefaultModulusH = 129;
inline constexpr int kDefaultModulusX = 513;

/// Errors at or below this multiple of max(1, sup|f|) count as rounding.
inline constexpr double kRoundingFloor = 1e-12;

inline double phi_squared(double x) { return x * (1.0 - x); }

inline std::vector<double> uniform_grid(int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

/// Measured error compared against a theorem's right-hand side. A negative
/// slack is a finding and is reported as such.
struct BoundReport {
    std::string function;
    int n = 0;
    double mu = 1.0;
    std::optional<double> x;  // empty for sup-norm rows
    std::string variant;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    std::string flags;
};

struct SupError {
    double value = 0.0;
    double argmax = 0.0;
    bool negative_base = false;
};

/// max over a uniform grid (endpoints included) of |D^{M,2}_{n,mu}(f;x) - f(x)|.
inline SupError measure_sup_error(const FunctionModel& f, const OperatorParams& params, int grid_size = kDefaultSupGrid,
                                  int threads = 1) {
    if (grid_size < 3) throw std::invalid_argument("grid_size must be >= 3");
    default_coefficient_cache().get(f, params.n);
    const std::vector<double> grid = uniform_grid(grid_size);
    std::vector<double> err(grid.size());
    std::vector<char> flagged(grid.size(), 0);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const BezierValue v = apply_dm2_bezier(f, params, grid[i]);
        err[i] = std::abs(v.value - f(grid[i]));
        flagged[i] = v.negative_base ? 1 : 0;
    });
    SupError out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (err[i] > out.value) {
            out.value = err[i];
            out.argmax = grid[i];
        }
        out.negative_base = out.negative_base || flagged[i];
    }
    return out;
}

inline double sup_error(const FunctionModel& f, const OperatorParams& params, int grid_size = kDefaultSupGrid) {
    return measure_sup_error(f, params, grid_size).value;
}

/// First-order Ditzian-Totik modulus
///   w_phi(f,t) = sup_{0<h<=t} sup_x |f(x + h phi(x)/2) - f(x - h phi(x)/2)|,
/// with h log-spaced on [t/1024, t] and x uniform, restricted to x where both
/// arguments stay in [0,1].
inline double dt_modulus(const FunctionModel& f, double t, int h_samples = kDefaultModulusH,
                         int x_samples = kDefaultModulusX) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("modulus step t must lie in (0,1]");
    if (h_samples < 16 || x_samples < 16) throw std::invalid_argument("modulus sample counts must be >= 16");
    const std::vector<double> xs = uniform_grid(x_samples);
    double best = 0.0;
    const double log_lo = std::log(t / 1024.0);
    const double log_hi = std::log(t);
    for (int i = 0; i < h_samples; ++i) {
        const double h = i + 1 == h_samples ? t : std::exp(log_lo + (log_hi - log_lo) * i / (h_samples - 1));
        for (double x : xs) {
            const double half = 0.5 * h * std::sqrt(phi_squared(x));
            const double lo = x - half, hi = x + half;
            if (lo < 0.0 || hi > 1.0) continue;
            best = std::max(best, std::abs(f(hi) - f(lo)));
        }
    }
    return best;
}

struct DirectBoundRow {
    int n = 0;
    double sup_error = 0.0;
    double modulus = 0.0;
    /// sup_error / modulus; +inf when the modulus vanishes but the error is
    /// above rounding level.
    double empirical_c = 0.0;
};

inline std::vector<DirectBoundRow> direct_bound_constant(const FunctionModel& f, double mu, const std::vector<int>& n_list,
                                                         int grid_size = kDefaultSupGrid, int threads = 1) {
    std::vector<DirectBoundRow> rows;
    const double noise = kRoundingFloor * std::max(1.0, f.grid_sup_norm());
    for (int n : n_list) {
        const OperatorParams params(n, mu);
        DirectBoundRow r;
        r.n = n;
        r.sup_error = measure_sup_error(f, params, grid_size, threads).value;
        r.modulus = dt_modulus(f, 1.0 / std::sqrt(n + 2.0));
        if (r.modulus > 0.0)
            r.empirical_c = r.sup_error / r.modulus;
        else
            r.empirical_c = r.sup_error > noise ? std::numeric_limits<double>::infinity() : 0.0;
        rows.push_back(r);
    }
    return rows;
}

/// Parameters of the two-parameter Lipschitz-type class
///   |f(t) - f(x)| <= M |t-x|^zeta / (t + alpha1 x^2 + alpha2 x)^(zeta/2).
struct LipParams {
    double zeta = 1.0;
    double alpha1 = 0.0;
    double alpha2 = 1.0;
    double m_constant = 1.0;

    LipParams(double z, double a1, double a2, double m) : zeta(z), alpha1(a1), alpha2(a2), m_constant(m) {
        if (!(zeta > 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in (0,1]");
        if (!(alpha1 >= 0.0)) throw std::invalid_argument("alpha1 must be >= 0");
        if (!(alpha2 > 0.0)) throw std::invalid_argument("alpha2 must be > 0");
        if (!(m_constant > 0.0)) throw std::invalid_argument("class constant must be > 0");
    }
};

/// Smallest M for which f satisfies the class inequality on a (t,x) grid,
/// t in [0,1] and x in (0,1) with `points` steps each.
inline double lip_class_constant(const FunctionModel& f, double zeta, double alpha1, double alpha2, int points = 400) {
    double best = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double t = static_cast<double>(i) / points;
        const double ft = f(t);
        for (int j = 1; j < points; ++j) {
            const double x = static_cast<double>(j) / points;
            if (i == j) continue;
            const double num = std::abs(ft - f(x)) * std::pow(t + alpha1 * x * x + alpha2 * x, zeta / 2.0);
            best = std::max(best, num / std::pow(std::abs(t - x), zeta));
        }
    }
    return best;
}

/// rhs = M (mu phi^2(x) / ((n+2)(alpha1 x^2 + alpha2 x)))^(zeta/2), lhs the pointwise error.
inline BoundReport lip_bound(const FunctionModel& f, const LipParams& lip, const OperatorParams& params, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("Lipschitz-type bound needs x in (0,1]");
    const BezierValue v = apply_dm2_bezier(f, params, x);
    BoundReport r;
    r.function = f.name();
    r.n = params.n;
    r.mu = params.mu;
    r.x = x;
    r.variant = "lip";
    r.lhs = std::abs(v.value - f(x));
    const double inner =
        params.mu * phi_squared(x) / ((params.n + 2.0) * (lip.alpha1 * x * x + lip.alpha2 * x));
    r.rhs = lip.m_constant * std::pow(inner, lip.zeta / 2.0);
    r.slack = r.rhs - r.lhs;
    if (v.negative_base) r.flags = "negative-base";
    return r;
}

enum class BvVariant { statement, proof };

inline const char* to_string(BvVariant v) { return v == BvVariant::statement ? "statement" : "proof"; }

/// Integer part of sqrt(n).
inline int isqrt(int n) {
    int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (static_cast<long>(s) * s > n) --s;
    while (static_cast<long>(s + 1) * (s + 1) <= n) ++s;
    return s;
}

/// Right-hand side of the bounded-variation rate at x. The variants differ
/// only in the factor on the one-sided-derivative group:
///   statement: (mu/(n+2)) phi^2(x)      proof: phi(x)/sqrt(n+2)
/// The variation terms are shared:
///   (mu/(n+2)) (phi^2/x^2)   sum_{k=1}^{[sqrt n]} V_{x-x/k}^{x} (f')_x  +  (x/sqrt n) V_{x-x/sqrt n}^{x} (f')_x
///   (mu/(n+2)) (phi^2/(1-x)) sum_{k=1}^{[sqrt n]} V_{x}^{x+(1-x)/k} (f')_x  +  ((1-x)/sqrt n) V_{x}^{x+(1-x)/sqrt n} (f')_x
inline double bv_rhs_value(const FunctionModel& model, const OperatorParams& params, double x, BvVariant variant) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("bv bound needs x in (0,1)");
    const int n = params.n;
    const double mu = params.mu;
    const int s = isqrt(n);
    if (s < 1) throw std::invalid_argument("bv bound needs [sqrt n] >= 1");
    const double rn = std::sqrt(static_cast<double>(n));
    const double phi2 = phi_squared(x);
    const OneSidedDerivatives d = one_sided_derivatives(model, x);

    const double group = std::abs(d.right + mu * d.left) / (mu + 1.0) + std::abs(d.right - d.left);
    const double factor = variant == BvVariant::statement ? mu / (n + 2.0) * phi2 : std::sqrt(phi2) / std::sqrt(n + 2.0);

    double left_sum = 0.0, right_sum = 0.0;
    for (int k = 1; k <= s; ++k) {
        left_sum += tv_fx(model, x, x - x / k, x);
        right_sum += tv_fx(model, x, x, x + (1.0 - x) / k);
    }
    const double left = mu / (n + 2.0) * phi2 / (x * x) * left_sum + x / rn * tv_fx(model, x, x - x / rn, x);
    const double right =
        mu / (n + 2.0) * phi2 / (1.0 - x) * right_sum + (1.0 - x) / rn * tv_fx(model, x, x, x + (1.0 - x) / rn);
    return group * factor + left + right;
}

inline BoundReport bv_rhs(const FunctionModel& model, const OperatorParams& params, double x, BvVariant variant) {
    const double rhs = bv_rhs_value(model, params, x, variant);
    const BezierValue v = apply_dm2_bezier(model, params, x);
    BoundReport r;
    r.function = model.name();
    r.n = params.n;
    r.mu = params.mu;
    r.x = x;
    r.variant = std::string("bv-") + to_string(variant);
    r.lhs = std::abs(v.value - model(x));
    r.rhs = rhs;
    r.slack = rhs - r.lhs;
    if (v.negative_base) r.flags = "negative-base";
    return r;
}

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int dropped = 0;
};

/// Least-squares line through (log n, log error). Pairs with error <= 0 are
/// dropped and counted in `dropped`.
inline RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<double> lx, ly;
    RateFit fit;
    for (const auto& [n, e] : pairs) {
        if (!(e > 0.0) || !(n > 0.0)) {
            ++fit.dropped;
            continue;
        }
        lx.push_back(std::log(n));
        ly.push_back(std::log(e));
    }
    if (lx.size() < 3) throw std::invalid_argument("rate fit needs at least 3 positive errors");
    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

} // namespace bdm
