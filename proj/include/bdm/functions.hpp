#pragma once

#include "bdm/basis.hpp"
#include "bdm/errors.hpp"
#include "bdm/rational_poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bdm {

/// A double within this distance of a breakpoint is treated as the breakpoint.
inline constexpr double kBreakpointSnap = 1e-12;

/// Piecewise polynomial on [0,1]. Piece i lives on [b_i, b_{i+1}) and is
/// written in the global variable x; the last piece is closed at 1. Pieces
/// need not join continuously.
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<RationalPolynomial> pieces)
        : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1)
            throw std::invalid_argument("breakpoints must start at 0 and end at 1");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i - 1] < breaks_[i])) throw std::invalid_argument("breakpoints must be strictly increasing");
        if (pieces_.size() + 1 != breaks_.size())
            throw std::invalid_argument("need exactly one polynomial per interval");
        for (const auto& b : breaks_) breaks_d_.push_back(b.get_d());
        for (const auto& p : pieces_) {
            derivs_.push_back(p.derivative());
            curvature_.push_back(derivs_.back().derivative());
        }
    }

    static PiecewisePoly single(RationalPolynomial p) { return PiecewisePoly({Rational(0), Rational(1)}, {std::move(p)}); }

    std::size_t piece_count() const noexcept { return pieces_.size(); }
    const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
    const std::vector<double>& breakpoints_d() const noexcept { return breaks_d_; }
    const std::vector<RationalPolynomial>& pieces() const noexcept { return pieces_; }
    const RationalPolynomial& derivative_piece(std::size_t i) const { return derivs_[i]; }

    int max_degree() const {
        int d = 0;
        for (const auto& p : pieces_) d = std::max(d, p.degree());
        return d;
    }

    /// Right-continuous piece lookup.
    std::size_t piece_index(double x) const {
        const auto it = std::upper_bound(breaks_d_.begin(), breaks_d_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - breaks_d_.begin());
        i = i == 0 ? 0 : i - 1;
        return std::min(i, pieces_.size() - 1);
    }

    double operator()(double x) const { return pieces_[piece_index(x)].eval(x); }

    /// f'(x) with the right-continuous convention (left derivative at 1).
    double derivative(double x) const { return derivs_[piece_index(x)].eval(x); }

    /// Index of the interior breakpoint within kBreakpointSnap of x, if any.
    std::optional<std::size_t> interior_breakpoint_near(double x) const {
        for (std::size_t i = 1; i + 1 < breaks_d_.size(); ++i)
            if (std::abs(x - breaks_d_[i]) <= kBreakpointSnap) return i;
        return std::nullopt;
    }

    /// Variation of f' over [a,b] with the right-continuous convention: a
    /// derivative jump at breakpoint c is counted when a < c <= b, or when
    /// a < c < b if count_jump_at_b is false.
    double derivative_variation(double a, double b, bool count_jump_at_b = true) const;

private:
    std::vector<Rational> breaks_;
    std::vector<double> breaks_d_;
    std::vector<RationalPolynomial> pieces_;
    std::vector<RationalPolynomial> derivs_;
    std::vector<RationalPolynomial> curvature_;
};

namespace detail {

/// Real roots of p inside the open interval (a,b), isolated through the
/// critical points of p (recursively), then refined by bisection.
inline std::vector<double> roots_in(const RationalPolynomial& p, double a, double b) {
    std::vector<double> roots;
    if (p.degree() <= 0 || !(a < b)) return roots;
    if (p.degree() == 1) {
        const double r = -p.coeff(0).get_d() / p.coeff(1).get_d();
        if (r > a && r < b) roots.push_back(r);
        return roots;
    }
    std::vector<double> knots{a};
    for (double c : roots_in(p.derivative(), a, b)) knots.push_back(c);
    knots.push_back(b);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        double flo = p.eval(lo), fhi = p.eval(hi);
        if (i > 0 && flo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if (flo * fhi >= 0.0) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = p.eval(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return roots;
}

/// Variation of a polynomial over [a,b]: sum of |increments| between its
/// consecutive turning points.
inline double polynomial_variation(const RationalPolynomial& p, const RationalPolynomial& dp, double a, double b) {
    if (!(a < b)) return 0.0;
    double prev = p.eval(a);
    double total = 0.0;
    for (double t : roots_in(dp, a, b)) {
        const double v = p.eval(t);
        total += std::abs(v - prev);
        prev = v;
    }
    total += std::abs(p.eval(b) - prev);
    return total;
}

} // namespace detail

inline double PiecewisePoly::derivative_variation(double a, double b, bool count_jump_at_b) const {
    if (!(a < b)) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const double lo = std::max(a, breaks_d_[i]);
        const double hi = std::min(b, breaks_d_[i + 1]);
        if (lo < hi) total += detail::polynomial_variation(derivs_[i], curvature_[i], lo, hi);
    }
    for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
        const double c = breaks_d_[i];
        const bool at_b = std::abs(c - b) <= kBreakpointSnap;
        const bool inside = c > a + kBreakpointSnap && c < b - kBreakpointSnap;
        if (inside || (at_b && count_jump_at_b && c > a + kBreakpointSnap))
            total += std::abs(derivs_[i].eval(c) - derivs_[i - 1].eval(c));
    }
    return total;
}

enum class SmoothnessTag { smooth, lipschitz, bv_derivative, bounded_only };

inline const char* to_string(SmoothnessTag t) {
    switch (t) {
    case SmoothnessTag::smooth: return "smooth";
    case SmoothnessTag::lipschitz: return "lipschitz";
    case SmoothnessTag::bv_derivative: return "bv-derivative";
    case SmoothnessTag::bounded_only: return "bounded-only";
    }
    return "?";
}

/// Evaluable test function on [0,1], optionally carrying exact piecewise
/// polynomial structure. Immutable; copies share the structure.
class FunctionModel {
public:
    static FunctionModel from_piecewise(std::string name, PiecewisePoly pp, SmoothnessTag tag) {
        FunctionModel m;
        m.name_ = std::move(name);
        m.tag_ = tag;
        auto shared = std::make_shared<const PiecewisePoly>(std::move(pp));
        m.structure_ = shared;
        m.eval_ = [shared](double x) { return (*shared)(x); };
        return m;
    }

    /// Evaluator-only model. Set endpoint_singular when derivatives blow up at
    /// 0 or 1 so quadrature grades its panels toward the endpoints.
    static FunctionModel from_evaluator(std::string name, std::function<double(double)> fn, SmoothnessTag tag,
                                        bool endpoint_singular = false) {
        FunctionModel m;
        m.name_ = std::move(name);
        m.tag_ = tag;
        m.eval_ = std::move(fn);
        m.endpoint_singular_ = endpoint_singular;
        return m;
    }

    double operator()(double x) const { return eval_(x); }

    /// Shared by copies, distinct across independently built models.
    const void* identity() const noexcept { return identity_.get(); }

    const std::string& name() const noexcept { return name_; }
    SmoothnessTag tag() const noexcept { return tag_; }
    bool has_structure() const noexcept { return static_cast<bool>(structure_); }
    bool endpoint_singular() const noexcept { return endpoint_singular_; }

    const PiecewisePoly& structure() const {
        if (!structure_) throw StructureMissing("function '" + name_ + "' has no piecewise-polynomial structure");
        return *structure_;
    }

    /// Breakpoints strictly inside (0,1); empty without structure.
    std::vector<double> interior_breakpoints() const {
        std::vector<double> out;
        if (!structure_) return out;
        const auto& b = structure_->breakpoints_d();
        for (std::size_t i = 1; i + 1 < b.size(); ++i) out.push_back(b[i]);
        return out;
    }

    /// Polynomial degree used to size quadrature rules.
    int nominal_degree() const { return structure_ ? structure_->max_degree() : 8; }

    /// sup |f| over a uniform grid including both endpoints.
    double grid_sup_norm(int points = 1001) const {
        double m = 0.0;
        for (int i = 0; i < points; ++i) m = std::max(m, std::abs(eval_(static_cast<double>(i) / (points - 1))));
        return m;
    }

private:
    FunctionModel() : identity_(std::make_shared<const char>('f')) {}

    std::shared_ptr<const char> identity_;
    std::string name_;
    SmoothnessTag tag_ = SmoothnessTag::bounded_only;
    std::function<double(double)> eval_;
    std::shared_ptr<const PiecewisePoly> structure_;
    bool endpoint_singular_ = false;
};

struct OneSidedDerivatives {
    double left;
    double right;
};

/// (f'(x-), f'(x+)) read from the adjacent polynomial pieces.
inline OneSidedDerivatives one_sided_derivatives(const FunctionModel& model, double x) {
    const PiecewisePoly& pp = model.structure();
    if (!(x > 0.0 && x < 1.0)) throw DomainError("one-sided derivatives need x in (0,1)");
    if (auto bp = pp.interior_breakpoint_near(x)) {
        const double c = pp.breakpoints_d()[*bp];
        return {pp.derivative_piece(*bp - 1).eval(c), pp.derivative_piece(*bp).eval(c)};
    }
    const double d = pp.derivative(x);
    return {d, d};
}

/// Total variation of f' on [a,b]: monotone segments between turning points
/// of f' plus derivative jumps at interior breakpoints.
inline double tv_derivative(const FunctionModel& model, double a, double b) {
    const PiecewisePoly& pp = model.structure();
    a = clamp_unit(a);
    b = clamp_unit(b);
    if (a > b) throw std::invalid_argument("tv_derivative needs a <= b");
    return pp.derivative_variation(a, b, true);
}

/// Total variation on [a,b] of the recentred derivative
///   (f')_x(t) = f'(t) - f'(x-) for t < x,  0 at t = x,  f'(t) - f'(x+) for t > x.
/// Both one-sided limits of (f')_x at x are zero, so crossing x adds two
/// jumps of size |(f')_x(x-)| and |(f')_x(x+)|, which vanish for piecewise
/// polynomial models but are accounted for literally.
inline double tv_fx(const FunctionModel& model, double x, double a, double b) {
    const PiecewisePoly& pp = model.structure();
    if (!(x > 0.0 && x < 1.0)) throw DomainError("tv_fx needs x in (0,1)");
    a = clamp_unit(a);
    b = clamp_unit(b);
    if (a > b) throw std::invalid_argument("tv_fx needs a <= b");
    if (a == b) return 0.0;

    const auto d = one_sided_derivatives(model, x);
    const bool b_at_x = std::abs(b - x) <= kBreakpointSnap;
    const bool a_at_x = std::abs(a - x) <= kBreakpointSnap;

    if (b < x && !b_at_x) return pp.derivative_variation(a, b, true);
    if (a > x && !a_at_x) return pp.derivative_variation(a, b, true);

    double total = 0.0;
    if (!a_at_x) {
        const double left_limit = pp.derivative_piece(pp.piece_index(x - 2 * kBreakpointSnap)).eval(x) - d.left;
        total += pp.derivative_variation(a, x, false) + std::abs(left_limit);
    }
    if (!b_at_x) {
        const double right_limit = pp.derivative_piece(pp.piece_index(x + 2 * kBreakpointSnap)).eval(x) - d.right;
        total += pp.derivative_variation(x, b, true) + std::abs(right_limit);
    }
    return total;
}

/// Largest |evaluator - structure| over a uniform grid (0 without structure).
inline double structure_disagreement(const FunctionModel& model, int points = 1001) {
    if (!model.has_structure()) return 0.0;
    const PiecewisePoly& pp = model.structure();
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = static_cast<double>(i) / (points - 1);
        worst = std::max(worst, std::abs(model(x) - pp(x)));
    }
    return worst;
}

namespace corpus {

inline FunctionModel monomial(unsigned m) {
    return FunctionModel::from_piecewise("e" + std::to_string(m), PiecewisePoly::single(RationalPolynomial::monomial(m)),
                                         SmoothnessTag::smooth);
}

inline FunctionModel abs_half() {
    const Rational half(1, 2);
    PiecewisePoly pp({Rational(0), half, Rational(1)},
                     {RationalPolynomial({half, Rational(-1)}), RationalPolynomial({-half, Rational(1)})});
    return FunctionModel::from_piecewise("abs-half", std::move(pp), SmoothnessTag::bv_derivative);
}

/// Tent rising from 0 at x=0 to 1 at the peak, back to 0 at x=1.
inline FunctionModel hat(const Rational& peak, const std::string& label) {
    if (!(peak > 0 && peak < 1)) throw std::invalid_argument("hat peak must lie in (0,1)");
    const Rational up = 1 / peak;
    const Rational down = 1 / (1 - peak);
    PiecewisePoly pp({Rational(0), peak, Rational(1)},
                     {RationalPolynomial({Rational(0), up}), RationalPolynomial({down, -down})});
    return FunctionModel::from_piecewise("hat@" + label, std::move(pp), SmoothnessTag::bv_derivative);
}

/// Continuous piecewise quadratic with derivative jumps at 1/3 and 2/3:
///   x^2 on [0,1/3],  1/9 + (x-1/3) - (x-1/3)^2 on [1/3,2/3],  1/3 - (x-2/3)^2 on [2/3,1].
inline FunctionModel two_kink() {
    const Rational third(1, 3), two_thirds(2, 3);
    const RationalPolynomial x = RationalPolynomial::x();
    const RationalPolynomial s1 = x - RationalPolynomial::constant(third);
    const RationalPolynomial s2 = x - RationalPolynomial::constant(two_thirds);
    const RationalPolynomial p0 = x * x;
    const RationalPolynomial p1 = RationalPolynomial::constant(Rational(1, 9)) + s1 - s1 * s1;
    const RationalPolynomial p2 = RationalPolynomial::constant(third) - s2 * s2;
    PiecewisePoly pp({Rational(0), third, two_thirds, Rational(1)}, {p0, p1, p2});
    return FunctionModel::from_piecewise("two-kink", std::move(pp), SmoothnessTag::bv_derivative);
}

/// Continuous, slope 1 before the jump point and slope 2 after it.
inline FunctionModel step_derivative(const Rational& at, const std::string& label) {
    if (!(at > 0 && at < 1)) throw std::invalid_argument("derivative jump must lie in (0,1)");
    PiecewisePoly pp({Rational(0), at, Rational(1)},
                     {RationalPolynomial::x(), RationalPolynomial({-at, Rational(2)})});
    return FunctionModel::from_piecewise("step-deriv@" + label, std::move(pp), SmoothnessTag::bv_derivative);
}

/// t^zeta, evaluator only.
inline FunctionModel power(double zeta, const std::string& name) {
    if (!(zeta > 0.0)) throw std::invalid_argument("power exponent must be positive");
    return FunctionModel::from_evaluator(
        name, [zeta](double t) { return t <= 0.0 ? 0.0 : std::pow(t, zeta); }, SmoothnessTag::lipschitz,
        zeta != std::floor(zeta));
}

} // namespace corpus

/// e0..e4, abs-half, hat@0.4, two-kink, sqrt, pow@1, step-deriv@1/3.
inline std::vector<FunctionModel> builtin_corpus() {
    std::vector<FunctionModel> out;
    for (unsigned m = 0; m <= 4; ++m) out.push_back(corpus::monomial(m));
    out.push_back(corpus::abs_half());
    out.push_back(corpus::hat(Rational(2, 5), "0.4"));
    out.push_back(corpus::two_kink());
    out.push_back(corpus::power(0.5, "sqrt"));
    out.push_back(corpus::power(1.0, "pow@1"));
    out.push_back(corpus::step_derivative(Rational(1, 3), "1/3"));
    return out;
}

} // namespace bdm
