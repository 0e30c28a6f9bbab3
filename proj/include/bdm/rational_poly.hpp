#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bdm {

using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    if (k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// num/den in canonical form (gmp arithmetic requires canonical operands).
inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Univariate polynomial with exact rational coefficients in ascending degree.
/// The coefficient vector is kept trimmed: the zero polynomial has no
/// coefficients and otherwise the leading coefficient is nonzero.
class RationalPolynomial {
public:
    RationalPolynomial() = default;

    explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    RationalPolynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static RationalPolynomial constant(const Rational& v) { return RationalPolynomial({v}); }

    static RationalPolynomial monomial(std::size_t degree, const Rational& coeff = 1) {
        std::vector<Rational> c(degree + 1);
        c[degree] = coeff;
        return RationalPolynomial(std::move(c));
    }

    static RationalPolynomial x() { return monomial(1); }

    /// C(n,k) x^k (1-x)^(n-k), expanded in the monomial basis.
    static RationalPolynomial bernstein(unsigned n, int k) {
        if (k < 0 || static_cast<unsigned>(k) > n) return {};
        const unsigned uk = static_cast<unsigned>(k);
        std::vector<Rational> c(n + 1);
        const BigInt lead = binomial(n, uk);
        for (unsigned j = 0; j <= n - uk; ++j) {
            BigInt term = lead * binomial(n - uk, j);
            if (j % 2 == 1) term = -term;
            c[uk + j] = Rational(term);
        }
        return RationalPolynomial(std::move(c));
    }

    /// Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::span<const Rational> coefficients() const noexcept { return c_; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

    RationalPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return RationalPolynomial(std::move(d));
    }

    /// Antiderivative vanishing at 0.
    RationalPolynomial antiderivative() const {
        if (c_.empty()) return {};
        std::vector<Rational> a(c_.size() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<unsigned long>(i + 1);
        return RationalPolynomial(std::move(a));
    }

    /// p(1 - x).
    RationalPolynomial reflect() const {
        const RationalPolynomial one_minus_x({Rational(1), Rational(-1)});
        RationalPolynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * one_minus_x + constant(*it);
        return acc;
    }

    RationalPolynomial pow(unsigned e) const {
        RationalPolynomial r = constant(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    RationalPolynomial& operator+=(const RationalPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    RationalPolynomial& operator-=(const RationalPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    RationalPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
    friend RationalPolynomial operator-(RationalPolynomial a) { return a *= Rational(-1); }
    friend RationalPolynomial operator*(RationalPolynomial a, const Rational& s) { return a *= s; }
    friend RationalPolynomial operator*(const Rational& s, RationalPolynomial a) { return a *= s; }

    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return RationalPolynomial(std::move(r));
    }

    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }

    /// Ascending-degree rendering with canonical fractions,
    /// e.g. "-1/52 + 5/39*x - 5/39*x^2".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rational& v = c_[i];
            if (v == 0) continue;
            Rational mag = abs(v);
            if (first) {
                if (v < 0) os << '-';
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1) os << mag.get_str() << '*';
            os << 'x';
            if (i > 1) os << '^' << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

enum class ArithOp { add, sub, mul };

inline RationalPolynomial poly_arith(const RationalPolynomial& a, const RationalPolynomial& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    }
    return {};
}

inline Rational poly_definite_integral(const RationalPolynomial& p, const Rational& a, const Rational& b) {
    const RationalPolynomial anti = p.antiderivative();
    return anti(b) - anti(a);
}

/// Exact conversion of a double (every finite double is a dyadic rational).
inline Rational to_rational(double v) { return Rational(v); }

} // namespace bdm
