#pragma once

#include "bdm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace bdm {

/// Shortest-stable rendering: 17 significant digits, '.' separator, and
/// "inf"/"-inf"/"nan" spelled out.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    line += '\n';
    return line;
}

inline constexpr const char* kBoundReportHeader = "function,n,mu,x,variant,lhs,rhs,slack,flags";

inline std::string to_csv(const std::vector<BoundReport>& rows) {
    std::string out = std::string(kBoundReportHeader) + '\n';
    for (const auto& r : rows) {
        out += csv_line({r.function, std::to_string(r.n), format_real(r.mu), r.x ? format_real(*r.x) : "SUP", r.variant,
                         format_real(r.lhs), format_real(r.rhs), format_real(r.slack), r.flags});
    }
    return out;
}

struct PlotSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Static log-log plot. Nonpositive points are skipped.
inline std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
    constexpr double W = 640, H = 420, L = 80, R = 20, T = 40, B = 60;
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!(s.xs[i] > 0.0 && s.ys[i] > 0.0) || !std::isfinite(s.ys[i])) continue;
            lx0 = std::min(lx0, std::log10(s.xs[i]));
            lx1 = std::max(lx1, std::log10(s.xs[i]));
            ly0 = std::min(ly0, std::log10(s.ys[i]));
            ly1 = std::max(ly1, std::log10(s.ys[i]));
        }
    if (lx0 > lx1) lx0 = 0, lx1 = 1, ly0 = 0, ly1 = 1;
    lx0 = std::floor(lx0), lx1 = std::ceil(lx1), ly0 = std::floor(ly0), ly1 = std::ceil(ly1);
    if (lx1 == lx0) lx1 += 1;
    if (ly1 == ly0) ly1 += 1;
    auto px = [&](double v) { return L + (std::log10(v) - lx0) / (lx1 - lx0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (std::log10(v) - ly0) / (ly1 - ly0) * (H - T - B); };
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else o += c;
        }
        return o;
    };
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(lx0); e <= static_cast<int>(lx1); ++e) {
        const double x = px(std::pow(10.0, e));
        os << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x << "\" y2=\"" << H - B
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">1e" << e
           << "</text>\n";
    }
    for (int e = static_cast<int>(ly0); e <= static_cast<int>(ly1); ++e) {
        const double y = py(std::pow(10.0, e));
        os << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e" << e
           << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << esc(x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (T + H - B) / 2 << ")\">" << esc(y_label) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = colours[s % 5];
        std::ostringstream pts;
        for (std::size_t i = 0; i < series[s].xs.size() && i < series[s].ys.size(); ++i) {
            const double xv = series[s].xs[i], yv = series[s].ys[i];
            if (!(xv > 0.0 && yv > 0.0) || !std::isfinite(yv)) continue;
            pts << px(xv) << ',' << py(yv) << ' ';
            os << "<circle cx=\"" << px(xv) << "\" cy=\"" << py(yv) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        }
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"" << pts.str() << "\"/>\n";
        os << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 + 16 * s << "\" font-size=\"12\" fill=\"" << col << "\">"
           << esc(series[s].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace bdm
