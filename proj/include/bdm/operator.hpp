#pragma once

#include "bdm/basis.hpp"
#include "bdm/functions.hpp"
#include "bdm/modified_basis.hpp"
#include "bdm/quadrature.hpp"
#include "bdm/rational_poly.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

namespace bdm {

struct OperatorParams {
    int n = 3;
    double mu = 1.0;
    ModWeightConfig config = ModWeightConfig::order2();

    OperatorParams(int degree, double mu_, ModWeightConfig cfg = ModWeightConfig::order2())
        : n(degree), mu(mu_), config(std::move(cfg)) {
        require_degree(n, 3);
        (void)BezierParams(mu);
    }
};

enum class CoefficientMethod { exact_rational, quadrature };

inline const char* to_string(CoefficientMethod m) {
    return m == CoefficientMethod::exact_rational ? "exact-rational" : "quadrature";
}

/// Entry k is (n+1) \int_0^1 p_{n,k}(u) f(u) du.
struct DurrmeyerCoefficients {
    int n = 0;
    std::vector<double> values;
    CoefficientMethod method = CoefficientMethod::exact_rational;
    double quadrature_error_estimate = 0.0;
};

/// Sum in fixed pairwise order over ascending indices.
inline double pairwise_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
    const std::size_t h = a.size() / 2;
    return pairwise_dot(a.first(h), b.first(h)) + pairwise_dot(a.subspan(h), b.subspan(h));
}

namespace detail {

/// (p_{N,0}(r), ..., p_{N,N}(r)) in exact arithmetic.
inline std::vector<Rational> exact_bernstein_row(unsigned N, const Rational& r) {
    std::vector<Rational> row(N + 1);
    if (r == 0) {
        row[0] = 1;
        return row;
    }
    if (r == 1) {
        row[N] = 1;
        return row;
    }
    const Rational s = 1 - r;
    Rational p = 1;
    for (unsigned i = 0; i < N; ++i) p *= s;
    row[0] = p;
    const Rational odds = r / s;
    for (unsigned i = 0; i < N; ++i) {
        row[i + 1] = row[i] * make_rational(N - i, i + 1) * odds;
    }
    return row;
}

/// Tails T_i = sum_{l>=i} p_{N,l}(r), i = 0..N+1.
inline std::vector<Rational> exact_tails(unsigned N, const Rational& r) {
    const std::vector<Rational> row = exact_bernstein_row(N, r);
    std::vector<Rational> t(N + 2);
    for (int i = static_cast<int>(N); i >= 0; --i) t[i] = t[i + 1] + row[i];
    return t;
}

/// (n+1) \int_a^b p_{n,k}(u) q(u) du for every k, with
///   u^j p_{n,k} = [C(n,k)/C(n+j,k+j)] p_{n+j,k+j},
///   \int_0^y p_{M,K} = (1/(M+1)) sum_{i>K} p_{M+1,i}(y).
inline void accumulate_exact_piece(std::vector<Rational>& acc, int n, const RationalPolynomial& q, const Rational& a,
                                   const Rational& b) {
    const auto un = static_cast<unsigned>(n);
    const auto coeffs = q.coefficients();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        const unsigned M = un + static_cast<unsigned>(j);
        const std::vector<Rational> tb = exact_tails(M + 1, b);
        const std::vector<Rational> ta = exact_tails(M + 1, a);
        for (unsigned k = 0; k <= un; ++k) {
            const unsigned K = k + static_cast<unsigned>(j);
            const Rational factor = make_rational(binomial(un, k) * (un + 1), binomial(M, K) * (M + 1));
            acc[k] += coeffs[j] * factor * (tb[K + 1] - ta[K + 1]);
        }
    }
}

} // namespace detail

/// Exact rational coefficients for a piecewise polynomial.
inline std::vector<Rational> exact_durrmeyer_coefficients(const PiecewisePoly& pp, int n) {
    require_degree(n, 0);
    std::vector<Rational> acc(static_cast<std::size_t>(n) + 1);
    const auto& bps = pp.breakpoints();
    for (std::size_t i = 0; i < pp.piece_count(); ++i)
        detail::accumulate_exact_piece(acc, n, pp.pieces()[i], bps[i], bps[i + 1]);
    return acc;
}

/// Gauss-Legendre order 2*ceil((n+deg_f)/2)+4 per panel, panels aligned with
/// breakpoints (graded toward endpoint singularities), refined until two
/// levels agree to `tolerance`.
inline DurrmeyerCoefficients quadrature_durrmeyer_coefficients(const FunctionModel& f, int n,
                                                               double tolerance = 1e-12) {
    require_degree(n, 0);
    std::vector<double> cuts{0.0};
    for (double b : f.interior_breakpoints()) cuts.push_back(b);
    cuts.push_back(1.0);
    const int nodes = 2 * ((n + f.nominal_degree() + 1) / 2) + 4;
    CompositeOptions opts;
    opts.tolerance = tolerance;
    opts.graded = f.endpoint_singular();
    auto row = [n](double u) { return detail::bernstein_row(n, u); };
    auto fn = [&f](double u) { return f(u); };
    VectorIntegral vi = integrate_vector(fn, row, static_cast<std::size_t>(n) + 1, cuts, nodes, n + 1.0, opts);
    DurrmeyerCoefficients out;
    out.n = n;
    out.method = CoefficientMethod::quadrature;
    out.quadrature_error_estimate = vi.error_estimate;
    out.values = std::move(vi.values);
    for (double& v : out.values) v *= n + 1.0;
    return out;
}

/// Exact piecewise integration when f carries structure, quadrature
/// otherwise; `force` selects a path explicitly.
inline DurrmeyerCoefficients durrmeyer_coefficients(const FunctionModel& f, int n,
                                                    std::optional<CoefficientMethod> force = std::nullopt) {
    const CoefficientMethod method =
        force.value_or(f.has_structure() ? CoefficientMethod::exact_rational : CoefficientMethod::quadrature);
    if (method == CoefficientMethod::quadrature) return quadrature_durrmeyer_coefficients(f, n);
    const std::vector<Rational> exact = exact_durrmeyer_coefficients(f.structure(), n);
    DurrmeyerCoefficients out;
    out.n = n;
    out.method = CoefficientMethod::exact_rational;
    out.values.reserve(exact.size());
    for (const auto& v : exact) out.values.push_back(v.get_d());
    return out;
}

/// Read-shared memo of coefficients keyed by (model identity, n). Population
/// is idempotent: a racing duplicate computation yields identical values.
class CoefficientCache {
public:
    std::shared_ptr<const DurrmeyerCoefficients> get(const FunctionModel& f, int n) {
        const Key key{f.identity(), n};
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto computed = std::make_shared<const DurrmeyerCoefficients>(durrmeyer_coefficients(f, n));
        std::unique_lock lock(mutex_);
        auto [it, inserted] = entries_.emplace(key, std::move(computed));
        return it->second;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        entries_.clear();
    }

private:
    using Key = std::tuple<const void*, int>;
    std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const DurrmeyerCoefficients>> entries_;
};

inline CoefficientCache& default_coefficient_cache() {
    static CoefficientCache cache;
    return cache;
}

/// D_n(f;x) = sum_k p_{n,k}(x) c_k.
inline double apply_classical(const FunctionModel& f, int n, double x) {
    const auto c = default_coefficient_cache().get(f, n);
    const std::vector<double> row = bernstein_all(n, x);
    return pairwise_dot(row, c->values);
}

/// D^{M,2}_n(f;x) = sum_k p^{M,2}_{n,k}(x) c_k.
inline double apply_dm2(const FunctionModel& f, const OperatorParams& params, double x) {
    const auto c = default_coefficient_cache().get(f, params.n);
    const std::vector<double> row = modified_basis_all(params.config, params.n, x);
    return pairwise_dot(row, c->values);
}

struct BezierValue {
    double value = 0.0;
    bool negative_base = false;
};

/// D^{M,2}_{n,mu}(f;x) = sum_k Q^{(mu)}_{n,k}(x) c_k.
inline BezierValue apply_dm2_bezier(const FunctionModel& f, const OperatorParams& params, double x) {
    const auto c = default_coefficient_cache().get(f, params.n);
    const BezierRow q = bezier_weights(params.config, params.n, params.mu, x);
    return {pairwise_dot(q.weights, c->values), q.negative_base};
}

/// W_{n,mu}(x,u) = (n+1) sum_k Q^{(mu)}_{n,k}(x) p_{n,k}(u).
inline double kernel_W(const OperatorParams& params, double x, double u) {
    const BezierRow q = bezier_weights(params.config, params.n, params.mu, x);
    const std::vector<double> p = detail::bernstein_row(params.n, clamp_unit(u));
    return (params.n + 1) * pairwise_dot(q.weights, p);
}

/// kappa_{n,mu}(x,y) = \int_0^y W_{n,mu}(x,t) dt, integrated exactly in t.
inline double kappa(const OperatorParams& params, double x, double y) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("kappa needs x in (0,1)");
    const BezierRow q = bezier_weights(params.config, params.n, params.mu, x);
    const std::vector<double> a = bernstein_partial_integrals(params.n, y);
    return (params.n + 1) * pairwise_dot(q.weights, a);
}

/// D^{M,2}_{n,mu}(|u-x|; x) with |u-x| split at x and each side integrated
/// in closed form:  \int_0^y u p_{n,k} = ((k+1)/(n+1)) \int_0^y p_{n+1,k+1}.
inline double first_absolute_moment(const OperatorParams& params, double x) {
    x = clamp_unit(x);
    const int n = params.n;
    const BezierRow q = bezier_weights(params.config, n, params.mu, x);
    const std::vector<double> a_n = bernstein_partial_integrals(n, x);
    const std::vector<double> a_up = bernstein_partial_integrals(n + 1, x);
    std::vector<double> terms(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double whole = (k + 1.0) / ((n + 1.0) * (n + 2.0)) - x / (n + 1.0);
        const double below = (k + 1.0) / (n + 1.0) * a_up[k + 1] - x * a_n[k];
        terms[k] = whole - 2.0 * below;
    }
    return (n + 1) * pairwise_dot(q.weights, terms);
}

} // namespace bdm
