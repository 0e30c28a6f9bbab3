#pragma once

#include "bdm/errors.hpp"
#include "bdm/rational_poly.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bdm {

/// Arguments this far outside [0,1] are clamped; beyond it they are rejected.
inline constexpr double kUnitClampTolerance = 1e-12;

/// Degree and index of a Bernstein basis polynomial. Indices outside 0..n
/// denote the zero polynomial.
struct BasisIndex {
    int n = 0;
    int k = 0;

    constexpr bool in_range() const noexcept { return n >= 0 && k >= 0 && k <= n; }
};

inline double clamp_unit(double x) {
    if (!(x >= -kUnitClampTolerance && x <= 1.0 + kUnitClampTolerance))
        throw DomainError("argument " + std::to_string(x) + " outside [0,1]");
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

inline void require_degree(int n, int min_degree) {
    if (n < min_degree)
        throw InvalidDegree("degree " + std::to_string(n) + " below minimum " + std::to_string(min_degree));
}

/// p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k) for a single index.
inline double bernstein_eval(int n, int k, double x) {
    require_degree(n, 0);
    x = clamp_unit(x);
    if (k < 0 || k > n) return 0.0;
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    if (x == 1.0) return k == n ? 1.0 : 0.0;
    if (n <= 60) {
        double c = 1.0;
        const int kk = k < n - k ? k : n - k;
        for (int i = 1; i <= kk; ++i) c = c * (n - kk + i) / i;
        return c * std::pow(x, k) * std::pow(1.0 - x, n - k);
    }
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_c + k * std::log(x) + (n - k) * std::log1p(-x));
}

/// Full row (p_{n,0}(x), ..., p_{n,n}(x)) by the two-term recurrence
/// p_{m,k} = (1-x) p_{m-1,k} + x p_{m-1,k-1}. O(n^2) per row.
inline std::vector<double> bernstein_all(int n, double x) {
    require_degree(n, 0);
    x = clamp_unit(x);
    const double y = 1.0 - x;
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        row[m] = x * row[m - 1];
        for (int k = m - 1; k >= 1; --k) row[k] = y * row[k] + x * row[k - 1];
        row[0] = y * row[0];
    }
    return row;
}

namespace detail {

/// O(n) row evaluation for large degrees: the entry at the mode comes from
/// log-gamma, the rest from the ratio p_{n,k+1}/p_{n,k} walking outward.
/// Entries that underflow become 0.
inline std::vector<double> bernstein_row_linear(int n, double x) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    if (x <= 0.0) {
        row[0] = 1.0;
        return row;
    }
    if (x >= 1.0) {
        row[n] = 1.0;
        return row;
    }
    int mode = static_cast<int>(std::floor((n + 1) * x));
    if (mode > n) mode = n;
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(n - mode + 1.0);
    row[mode] = std::exp(log_c + mode * std::log(x) + (n - mode) * std::log1p(-x));
    const double odds = x / (1.0 - x);
    for (int k = mode; k < n; ++k) {
        row[k + 1] = row[k] * (static_cast<double>(n - k) / (k + 1)) * odds;
        if (row[k + 1] == 0.0) break;
    }
    for (int k = mode; k > 0; --k) {
        row[k - 1] = row[k] * (static_cast<double>(k) / (n - k + 1)) / odds;
        if (row[k - 1] == 0.0) break;
    }
    return row;
}

/// Recurrence for moderate degrees, linear walk beyond.
inline std::vector<double> bernstein_row(int n, double x) {
    return n <= 60 ? bernstein_all(n, x) : bernstein_row_linear(n, clamp_unit(x));
}

} // namespace detail

/// \int_0^1 p_{n,k}(u) du as a Beta integral C(n,k) k! (n-k)! / (n+1)!.
inline Rational bernstein_integral_01(int n, int k) {
    require_degree(n, 0);
    if (k < 0 || k > n) return Rational(0);
    const auto un = static_cast<unsigned long>(n);
    const auto uk = static_cast<unsigned long>(k);
    return make_rational(binomial(un, uk) * factorial(uk) * factorial(un - uk), factorial(un + 1));
}

/// Antiderivatives A_k(y) = \int_0^y p_{n,k}(t) dt for k = 0..n, from the
/// Bernstein-form identity A_k(y) = (1/(n+1)) sum_{j>k} p_{n+1,j}(y).
inline std::vector<double> bernstein_partial_integrals(int n, double y) {
    require_degree(n, 0);
    const std::vector<double> up = bernstein_all(n + 1, y);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    double tail = 0.0;
    for (int j = n + 1; j >= 1; --j) {
        tail += up[j];
        out[j - 1] = tail / (n + 1);
    }
    return out;
}

inline double bernstein_partial_integral(int n, int k, double y) {
    require_degree(n, 0);
    if (k < 0 || k > n) return 0.0;
    return bernstein_partial_integrals(n, y)[k];
}

} // namespace bdm
