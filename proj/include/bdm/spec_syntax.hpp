#pragma once

// Text grammars accepted on the command line.
//
//   n-list      := item ("," item)*
//   item        := int | int ".." int | int ".." int "x" int     (range / geometric ladder)
//
//   rational    := ["-"|"+"] digits ["." digits] ["/" digits]    (decimals are exact: 0.4 = 2/5)
//
//   polynomial  := sum
//   sum         := product (("+"|"-") product)*
//   product     := unary (("*"|"/") unary | unary)*              (juxtaposition multiplies: 3x, 2(x-1))
//   unary       := ("-"|"+") unary | power
//   power       := primary ["^" digits]
//   primary     := number | "x" | "(" sum ")"
//   Division is allowed only by constants.
//
//   function    := builtin | piecewise
//   builtin     := "e0".."e9" | "abs-half" | "two-kink" | "sqrt"
//                | "hat@" rational | "pow@" real | "step-deriv@" rational
//   piecewise   := "piecewise:" rational "," piece ("," rational "," piece)* "," rational
//   piece       := [name "(x)="] polynomial
//
// Breakpoints must start at 0, end at 1 and increase strictly.

#include "bdm/errors.hpp"
#include "bdm/functions.hpp"
#include "bdm/rational_poly.hpp"

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace bdm {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline long parse_int(const std::string& s, const std::string& context) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    if (!all_digits(body) || body.size() > 9) throw ParseError("bad integer '" + s + "' in " + context);
    const long v = std::stol(body);
    return neg ? -v : v;
}

/// Reads digits ["." digits] at s[pos..] as an exact rational.
inline Rational read_unsigned_decimal(std::string_view s, std::size_t& pos) {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string int_part(s.substr(start, pos - start));
    std::string frac_part;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        const std::size_t fs = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        frac_part = std::string(s.substr(fs, pos - fs));
    }
    if (int_part.empty() && frac_part.empty()) throw ParseError("expected a number at '" + std::string(s.substr(start)) + "'");
    BigInt num(int_part.empty() ? "0" : int_part);
    BigInt den(1);
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return make_rational(num, den);
}

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    RationalPolynomial parse() {
        RationalPolynomial p = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RationalPolynomial sum() {
        RationalPolynomial acc = product();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc += product();
            } else if (c == '-') {
                ++pos_;
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

    static bool starts_primary(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == '('; }

    RationalPolynomial product() {
        RationalPolynomial acc = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (c == '/') {
                ++pos_;
                const RationalPolynomial d = unary();
                if (d.degree() != 0) fail("division only by nonzero constants");
                acc = acc * (1 / d.coeff(0));
            } else if (starts_primary(c)) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    RationalPolynomial unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return unary() * Rational(-1);
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    RationalPolynomial power() {
        RationalPolynomial base = primary();
        if (peek() == '^') {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 3) fail("exponent too large");
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    RationalPolynomial primary() {
        const char c = peek();
        if (c == 'x') {
            ++pos_;
            return RationalPolynomial::x();
        }
        if (c == '(') {
            ++pos_;
            RationalPolynomial inner = sum();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return RationalPolynomial::constant(read_unsigned_decimal(s_, pos_));
        fail(c == '\0' ? "unexpected end" : "unexpected '" + std::string(1, c) + "'");
    }
};

} // namespace detail

/// Exact rational from "3", "-1/3", "0.4" or "2.5/3".
inline Rational parse_rational(const std::string& text) {
    const std::string s = detail::trim(text);
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    Rational v = detail::read_unsigned_decimal(s, pos);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        const Rational d = detail::read_unsigned_decimal(s, pos);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        v /= d;
    }
    if (pos != s.size()) throw ParseError("bad rational '" + text + "'");
    return neg ? Rational(-v) : v;
}

inline RationalPolynomial parse_polynomial(const std::string& text) { return detail::PolyParser(text).parse(); }

/// Degrees from an n-list expression, in the order written.
inline std::vector<int> parse_n_list(const std::string& text) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ParseError("empty n-list");
    std::vector<int> out;
    for (const std::string& item : detail::split(s, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(detail::parse_int(item, "n-list")));
            continue;
        }
        const long lo = detail::parse_int(detail::trim(item.substr(0, dots)), "n-list");
        std::string rest = detail::trim(item.substr(dots + 2));
        const auto xpos = rest.find('x');
        if (xpos == std::string::npos) {
            const long hi = detail::parse_int(rest, "n-list");
            if (hi < lo) throw ParseError("empty range '" + item + "'");
            if (hi - lo > 100000) throw ParseError("range too long '" + item + "'");
            for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
        } else {
            const long hi = detail::parse_int(detail::trim(rest.substr(0, xpos)), "n-list");
            const long ratio = detail::parse_int(detail::trim(rest.substr(xpos + 1)), "n-list");
            if (ratio < 2) throw ParseError("geometric ratio must be >= 2 in '" + item + "'");
            if (lo < 1 || hi < lo) throw ParseError("bad geometric ladder '" + item + "'");
            for (long v = lo; v <= hi; v *= ratio) out.push_back(static_cast<int>(v));
        }
    }
    return out;
}

inline FunctionModel parse_piecewise(const std::string& spec) {
    const std::string body = detail::trim(spec.substr(spec.find(':') + 1));
    const std::vector<std::string> parts = detail::split(body, ',');
    if (parts.size() < 3 || parts.size() % 2 == 0)
        throw ParseError("piecewise spec needs breakpoint, piece, ..., breakpoint: '" + spec + "'");
    std::vector<Rational> breaks;
    std::vector<RationalPolynomial> pieces;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i % 2 == 0) {
            breaks.push_back(parse_rational(parts[i]));
            continue;
        }
        std::string piece = parts[i];
        if (const auto eq = piece.find('='); eq != std::string::npos) {
            const std::string lhs = detail::trim(piece.substr(0, eq));
            if (lhs.size() < 4 || lhs.substr(lhs.size() - 3) != "(x)")
                throw ParseError("piece label must look like p(x)=, got '" + lhs + "'");
            piece = piece.substr(eq + 1);
        }
        pieces.push_back(parse_polynomial(piece));
    }
    try {
        return FunctionModel::from_piecewise(detail::trim(spec), PiecewisePoly(std::move(breaks), std::move(pieces)),
                                             SmoothnessTag::bv_derivative);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("piecewise spec: ") + e.what());
    }
}

/// Builtin name or inline piecewise definition.
inline FunctionModel parse_function_spec(const std::string& text) {
    const std::string s = detail::trim(text);
    if (s.rfind("piecewise", 0) == 0 && s.find(':') != std::string::npos) return parse_piecewise(s);
    if (s.size() == 2 && s[0] == 'e' && std::isdigit(static_cast<unsigned char>(s[1])))
        return corpus::monomial(static_cast<unsigned>(s[1] - '0'));
    if (s == "abs-half") return corpus::abs_half();
    if (s == "two-kink") return corpus::two_kink();
    if (s == "sqrt") return corpus::power(0.5, "sqrt");
    const auto at = s.find('@');
    if (at != std::string::npos) {
        const std::string head = s.substr(0, at);
        const std::string arg = s.substr(at + 1);
        try {
            if (head == "hat") return corpus::hat(parse_rational(arg), arg);
            if (head == "step-deriv") return corpus::step_derivative(parse_rational(arg), arg);
            if (head == "pow") {
                const double z = parse_rational(arg).get_d();
                return corpus::power(z, s);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError("function '" + s + "': " + e.what());
        }
    }
    throw ParseError("unknown function '" + s + "'");
}

} // namespace bdm
