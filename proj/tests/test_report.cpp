#include "bdm/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

TEST(Report, RealsUseSeventeenDigits) {
    EXPECT_EQ(bdm::format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(bdm::format_real(1.0), "1");
    EXPECT_EQ(bdm::format_real(-0.0), "0");
    EXPECT_EQ(bdm::format_real(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(bdm::format_real(std::nan("")), "nan");
    const double v = 1.0 / 3.0;
    EXPECT_EQ(std::stod(bdm::format_real(v)), v);
}

TEST(Report, CsvQuoting) {
    EXPECT_EQ(bdm::csv_field("plain"), "plain");
    EXPECT_EQ(bdm::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(bdm::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(bdm::csv_line({"1", "x,y", ""}), "1,\"x,y\",\n");
}

TEST(Report, BoundReportCsv) {
    bdm::BoundReport sup;
    sup.function = "abs-half";
    sup.n = 64;
    sup.variant = "direct";
    sup.lhs = 0.5;
    sup.rhs = 0.25;
    sup.slack = -0.25;
    bdm::BoundReport at = sup;
    at.x = 0.5;
    at.flags = "negative-base";
    const std::string csv = bdm::to_csv({sup, at});
    EXPECT_EQ(csv, "function,n,mu,x,variant,lhs,rhs,slack,flags\n"
                   "abs-half,64,1,SUP,direct,0.5,0.25,-0.25,\n"
                   "abs-half,64,1,0.5,direct,0.5,0.25,-0.25,negative-base\n");
}

TEST(Report, SvgIsWellFormedAndSkipsNonpositive) {
    const std::string svg = bdm::loglog_svg("t<1>", "n", "err", {{"s", {1, 10, 100}, {1e-1, 0.0, 1e-3}}});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("t&lt;1&gt;"), std::string::npos);
    std::size_t circles = 0;
    for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    EXPECT_EQ(circles, 2u);
}
