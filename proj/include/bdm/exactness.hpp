#pragma once

#include "bdm/modified_basis.hpp"
#include "bdm/rational_poly.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdm {

/// p^{M,2}_{n,k} for k = 0..n as exact polynomials in x.
inline std::vector<RationalPolynomial> modified_basis_polys(const ModWeightConfig& cfg, int n) {
    require_degree(n, 3);
    const RationalPolynomial g = cfg.g_poly(n);
    const RationalPolynomial g_reflected = g.reflect();
    const RationalPolynomial h = cfg.h_poly(n);
    const unsigned m = static_cast<unsigned>(n - 2);
    std::vector<RationalPolynomial> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        out.push_back(g * RationalPolynomial::bernstein(m, k) + h * RationalPolynomial::bernstein(m, k - 1) +
                      g_reflected * RationalPolynomial::bernstein(m, k - 2));
    }
    return out;
}

/// (n+1) \int_0^1 p_{n,k}(u) u^m du = (n+1) C(n,k) (k+m)! (n-k)! / (n+m+1)!.
inline Rational monomial_average(int n, int k, int m) {
    const auto un = static_cast<unsigned long>(n);
    const auto uk = static_cast<unsigned long>(k);
    const auto um = static_cast<unsigned long>(m);
    return make_rational(binomial(un, uk) * (un + 1) * factorial(uk + um) * factorial(un - uk),
                         factorial(un + um + 1));
}

namespace detail {

inline RationalPolynomial image_from_polys(const std::vector<RationalPolynomial>& basis, int n, int m) {
    RationalPolynomial acc;
    for (int k = 0; k <= n; ++k) acc += basis[k] * monomial_average(n, k, m);
    return acc;
}

inline RationalPolynomial central_from_images(const std::vector<RationalPolynomial>& images, int order) {
    const RationalPolynomial minus_x({Rational(0), Rational(-1)});
    RationalPolynomial acc;
    for (int j = 0; j <= order; ++j)
        acc += Rational(binomial(order, j)) * minus_x.pow(static_cast<unsigned>(order - j)) * images[j];
    return acc;
}

} // namespace detail

/// D^{M,2}_n(e_m; x) as an exact polynomial in x.
inline RationalPolynomial dm2_image_poly(int m, int n, const ModWeightConfig& cfg = ModWeightConfig::order2()) {
    if (m < 0) throw std::invalid_argument("monomial degree must be >= 0");
    return detail::image_from_polys(modified_basis_polys(cfg, n), n, m);
}

/// D^{M,2}_n((u-x)^order; x) by binomial expansion over the monomial images.
inline RationalPolynomial central_moment_poly(int order, int n, const ModWeightConfig& cfg = ModWeightConfig::order2()) {
    if (order < 1 || order > 4) throw std::invalid_argument("central moment order must be in 1..4");
    const auto basis = modified_basis_polys(cfg, n);
    std::vector<RationalPolynomial> images;
    for (int j = 0; j <= order; ++j) images.push_back(detail::image_from_polys(basis, n, j));
    return detail::central_from_images(images, order);
}

/// (20 x(1-x) - 3) / ((n+2)(n+3)), the closed form expected for the second
/// central moment under the default weights.
inline RationalPolynomial expected_second_moment(int n) {
    const Rational d = make_rational(1, (n + 2) * (n + 3));
    return RationalPolynomial({Rational(-3), Rational(20), Rational(-20)}) * d;
}

struct IdentityCheck {
    std::string name;
    bool exact = false;
    RationalPolynomial computed;
    RationalPolynomial expected;

    RationalPolynomial discrepancy() const { return computed - expected; }
};

/// Smallest C with m2(x) <= C x(1-x)/(n+2) on the grid x = i/G. Absent when
/// m2 > 0 at an endpoint, where x(1-x) vanishes.
struct RemarkCertificate {
    bool exists = false;
    Rational constant;
    int grid_steps = 0;
};

inline RemarkCertificate remark_certificate(const RationalPolynomial& second_moment, int n, int grid_steps = 1000) {
    RemarkCertificate cert;
    cert.grid_steps = grid_steps;
    if (second_moment(Rational(0)) > 0 || second_moment(Rational(1)) > 0) return cert;
    bool first = true;
    for (int i = 1; i < grid_steps; ++i) {
        const Rational x = make_rational(i, grid_steps);
        const Rational ratio = second_moment(x) * (n + 2) / (x * (1 - x));
        if (first || ratio > cert.constant) cert.constant = ratio;
        first = false;
    }
    cert.exists = !first;
    return cert;
}

struct VerificationRow {
    int n = 0;
    std::vector<IdentityCheck> checks;
    RemarkCertificate certificate;

    bool all_exact() const {
        for (const auto& c : checks)
            if (!c.exact) return false;
        return true;
    }
};

struct VerificationReport {
    std::string config;
    std::vector<VerificationRow> rows;

    bool all_exact() const {
        for (const auto& r : rows)
            if (!r.all_exact()) return false;
        return true;
    }

    /// One line per (n, identity), plus one certificate line per n.
    std::string to_text() const {
        std::ostringstream os;
        os << "# config " << config << '\n';
        for (const auto& r : rows) {
            for (const auto& c : r.checks) {
                os << "n=" << r.n << ' ' << c.name << ' ' << (c.exact ? "exact" : "MISMATCH");
                if (!c.exact)
                    os << " computed=[" << c.computed.to_string() << "] expected=[" << c.expected.to_string() << ']';
                os << '\n';
            }
            os << "n=" << r.n << " remark-certificate ";
            if (r.certificate.exists)
                os << "C=" << r.certificate.constant.get_str() << " grid=1/" << r.certificate.grid_steps << '\n';
            else
                os << "none\n";
        }
        return os.str();
    }

    /// One row per n: n,identity,status,discrepancy,certificate_C_num,certificate_C_den.
    std::string to_csv() const {
        std::ostringstream os;
        os << "n,identity,status,discrepancy,certificate_C_num,certificate_C_den\n";
        for (const auto& r : rows) {
            std::string disc;
            for (const auto& c : r.checks) {
                if (c.exact) continue;
                if (!disc.empty()) disc += "; ";
                disc += c.name + ": " + c.discrepancy().to_string();
            }
            os << r.n << ",lemma1," << (r.all_exact() ? "exact" : "mismatch") << ",\"" << disc << "\",";
            if (r.certificate.exists)
                os << r.certificate.constant.get_num().get_str() << ',' << r.certificate.constant.get_den().get_str();
            else
                os << ',';
            os << '\n';
        }
        return os.str();
    }
};

/// Checks D(e0)=1, D(e1)=x, D(u-x)=0 and the closed-form second central
/// moment as exact polynomial identities for every n in [n_from, n_to], and
/// certifies the second-moment bound constant on a 1/1000 rational grid.
inline VerificationReport verify_lemma1(int n_from, int n_to, const ModWeightConfig& cfg = ModWeightConfig::order2()) {
    if (n_from < 3 || n_to > 60 || n_from > n_to) throw std::invalid_argument("verification range must lie in [3,60]");
    VerificationReport report;
    report.config = cfg.name;
    const RationalPolynomial one = RationalPolynomial::constant(1);
    const RationalPolynomial x = RationalPolynomial::x();
    for (int n = n_from; n <= n_to; ++n) {
        const auto basis = modified_basis_polys(cfg, n);
        std::vector<RationalPolynomial> images;
        for (int m = 0; m <= 2; ++m) images.push_back(detail::image_from_polys(basis, n, m));
        const RationalPolynomial m1 = detail::central_from_images(images, 1);
        const RationalPolynomial m2 = detail::central_from_images(images, 2);
        VerificationRow row;
        row.n = n;
        row.checks.push_back({"e0-reproduction", images[0] == one, images[0], one});
        row.checks.push_back({"e1-reproduction", images[1] == x, images[1], x});
        row.checks.push_back({"first-central-moment", m1.is_zero(), m1, RationalPolynomial()});
        const RationalPolynomial expected = expected_second_moment(n);
        row.checks.push_back({"second-central-moment", m2 == expected, m2, expected});
        row.certificate = remark_certificate(m2, n);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace bdm
