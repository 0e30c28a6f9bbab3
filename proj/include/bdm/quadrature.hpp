#pragma once

#include "bdm/basis.hpp"
#include "bdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace bdm {

struct GaussRule {
    std::vector<double> nodes;   // on [-1,1]
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule by Newton iteration on P_m; rules are
/// cached per m.
inline std::shared_ptr<const GaussRule> gauss_legendre(int m) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const GaussRule>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    // (P_m(z), P_m'(z)) by the three-term recurrence
    auto legendre = [m](double z) {
        double p0 = 1.0, p1 = z;
        for (int j = 2; j <= m; ++j) {
            const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, m * (z * p1 - p0) / (z * z - 1.0)};
    };
    auto rule = std::make_shared<GaussRule>();
    rule->nodes.resize(m);
    rule->weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(z);
            const double dz = p / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double dp = legendre(z).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule->nodes[i] = -z;
        rule->nodes[m - 1 - i] = z;
        rule->weights[i] = w;
        rule->weights[m - 1 - i] = w;
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(m, std::move(rule));
    return it->second;
}

struct Panel {
    double a;
    double b;
};

struct CompositeOptions {
    double tolerance = 1e-12;
    int max_level = 7;
    /// Geometric panels toward 0 and 1 for endpoint singularities.
    bool graded = false;
};

/// Panels for refinement level L: each base interval split into 2^L equal
/// parts; when graded, the panels touching 0 and 1 are further split
/// geometrically (ratio 1/2) down to width 2^-(30+10L) of the panel.
inline std::vector<Panel> composite_panels(std::span<const double> cuts, int level, bool graded) {
    std::vector<Panel> out;
    const int parts = 1 << level;
    const int depth = 30 + 10 * level;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double w = (b - a) / parts;
        for (int p = 0; p < parts; ++p) {
            const double lo = a + p * w;
            const double hi = p + 1 == parts ? b : a + (p + 1) * w;
            const bool at_zero = graded && lo == 0.0;
            const bool at_one = graded && hi == 1.0;
            if (!at_zero && !at_one) {
                out.push_back({lo, hi});
                continue;
            }
            // split in half first when both ends need grading
            const double mid = at_zero && at_one ? 0.5 * (lo + hi) : (at_zero ? hi : lo);
            if (at_zero) {
                const double width = mid - lo;
                out.push_back({lo, lo + width * std::ldexp(1.0, -depth)});
                for (int d = depth; d >= 1; --d)
                    out.push_back({lo + width * std::ldexp(1.0, -d), lo + width * std::ldexp(1.0, -d + 1)});
            }
            if (at_one) {
                const double width = hi - mid;
                for (int d = 1; d <= depth; ++d)
                    out.push_back({d == 1 ? mid : hi - width * std::ldexp(1.0, -d + 1), hi - width * std::ldexp(1.0, -d)});
                out.push_back({hi - width * std::ldexp(1.0, -depth), hi});
            }
        }
    }
    return out;
}

struct VectorIntegral {
    std::vector<double> values;
    double error_estimate = 0.0;
    int level = 0;
};

/// Integrates the vector-valued integrand u -> f(u) * row(u) over [0,1],
/// where row(u) has `width` entries, refining until successive levels agree
/// to options.tolerance (max-norm, after multiplying by `scale`).
inline VectorIntegral integrate_vector(const std::function<double(double)>& f,
                                       const std::function<std::vector<double>(double)>& row, std::size_t width,
                                       std::span<const double> cuts, int nodes_per_panel, double scale,
                                       const CompositeOptions& options = {}) {
    const auto rule = gauss_legendre(nodes_per_panel);
    auto at_level = [&](int level) {
        std::vector<double> acc(width, 0.0);
        for (const Panel& p : composite_panels(cuts, level, options.graded)) {
            const double half = 0.5 * (p.b - p.a);
            const double mid = 0.5 * (p.a + p.b);
            if (half <= 0.0) continue;
            std::vector<double> panel(width, 0.0);
            for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
                const double u = mid + half * rule->nodes[i];
                const double w = half * rule->weights[i] * f(u);
                if (w == 0.0) continue;
                const std::vector<double> r = row(u);
                for (std::size_t k = 0; k < width; ++k) panel[k] += w * r[k];
            }
            for (std::size_t k = 0; k < width; ++k) acc[k] += panel[k];
        }
        return acc;
    };

    VectorIntegral out;
    std::vector<double> prev = at_level(0);
    double err = 0.0;
    for (int level = 1; level <= options.max_level; ++level) {
        std::vector<double> cur = at_level(level);
        err = 0.0;
        for (std::size_t k = 0; k < width; ++k) err = std::max(err, scale * std::abs(cur[k] - prev[k]));
        prev = std::move(cur);
        if (err < options.tolerance) {
            out.values = std::move(prev);
            out.error_estimate = err;
            out.level = level;
            return out;
        }
    }
    throw QuadratureError("composite Gauss-Legendre did not reach tolerance", prev.empty() ? 0.0 : prev[0], err);
}

/// Scalar convenience wrapper over integrate_vector.
inline double integrate(const std::function<double(double)>& f, std::span<const double> cuts, int nodes_per_panel = 20,
                        const CompositeOptions& options = {}) {
    auto one = [](double) { return std::vector<double>{1.0}; };
    return integrate_vector(f, one, 1, cuts, nodes_per_panel, 1.0, options).values[0];
}

} // namespace bdm
