#include "bdm/analysis.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code = -1;
    std::string out;  // CSV written via --out
    std::string side; // everything printed to stdout/stderr
};

std::string tmp(const std::string& name) {
    const char* t = std::getenv("TMPDIR");
    return std::string(t && *t ? t : "/tmp") + "/bdm_cli_test_" + std::to_string(::getpid()) + "_" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

Result bdm_run(const std::string& args, bool with_out = true) {
    const std::string csv = tmp("out.csv"), log = tmp("log.txt");
    std::remove(csv.c_str());
    std::string cmd = std::string("'") + BDM_CLI_PATH + "' " + args;
    if (with_out) cmd += " --out '" + csv + "'";
    cmd += " >'" + log + "' 2>&1";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(csv);
    r.side = slurp(log);
    std::remove(csv.c_str());
    std::remove(log.c_str());
    return r;
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        std::vector<std::string> fields;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) fields.push_back(cell);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        out.push_back(fields);
    }
    return out;
}

double slope_from(const std::string& side) {
    const auto p = side.find("slope=");
    return p == std::string::npos ? std::nan("") : std::stod(side.substr(p + 6));
}

} // namespace

TEST(Cli, VerifyDefaultRange) {
    const Result r = bdm_run("verify --n 3..15");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(rows(r.out).size(), 13u);
}

TEST(Cli, VerifyRejectsSmallDegree) { EXPECT_EQ(bdm_run("verify --n 2..5").code, 1); }

TEST(Cli, VerifyReductionConfigReportsMismatch) {
    const Result r = bdm_run("verify --n 3..15 --config bernstein-reduction");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(rows(r.out).size(), 13u);
    EXPECT_NE(r.side.find("computed"), std::string::npos);
}

TEST(Cli, EvalReproducesLinear) {
    const Result r = bdm_run("eval --f e1 --n 10 --mu 1 --grid 11");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 11u);
    for (const auto& row : t) EXPECT_LE(std::stod(row[3]), 1e-11);
}

TEST(Cli, EvalConstantsForAnyMu) {
    const Result r = bdm_run("eval --f e0 --n 10 --mu 3 --grid 5");
    ASSERT_EQ(r.code, 0);
    for (const auto& row : rows(r.out)) EXPECT_EQ(row[2], "1");
}

TEST(Cli, EvalMaxErrorEqualsSupError) {
    const Result r = bdm_run("eval --f abs-half --n 100 --mu 2 --grid 201");
    ASSERT_EQ(r.code, 0);
    double worst = 0.0;
    for (const auto& row : rows(r.out)) worst = std::max(worst, std::stod(row[3]));
    EXPECT_NEAR(worst, bdm::sup_error(bdm::corpus::abs_half(), bdm::OperatorParams(100, 2.0), 201), 1e-15);
}

TEST(Cli, ConvergeAbsHalfRate) {
    const Result r = bdm_run("converge --f abs-half --mu 1 --n 16..512x2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(rows(r.out).size(), 6u);
    EXPECT_LE(slope_from(r.side), -0.35);
}

TEST(Cli, ConvergeQuadraticSlopeFollowsExactLaw) {
    // The exact error 3/((n+2)(n+3)) fits to about -1.906 on this ladder.
    const Result r = bdm_run("converge --f e2 --mu 1 --n 16,32,64,128,256");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(slope_from(r.side), -1.906, 1e-3);
}

TEST(Cli, ConvergeFlagsReproducedFunction) {
    const Result r = bdm_run("converge --f e0 --mu 2 --n 8,16,32");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.side.find("slope=not-meaningful"), std::string::npos);
}

TEST(Cli, BezierVariantDoesNotReproduceLinear) {
    // With mu != 1 the weights are not a linear image of the basis, so e1
    // carries an O(1/n) error.
    const Result r = bdm_run("converge --f e1 --mu 2 --n 8,16,32");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    for (const auto& row : t) EXPECT_GT(std::stod(row[1]), 1e-3);
    EXPECT_NEAR(slope_from(r.side), -1.0, 0.15);
}

TEST(Cli, ConvergePlotDoesNotAlterCsv) {
    const std::string svg = tmp("plot.svg");
    const Result a = bdm_run("converge --f two-kink --mu 1 --n 16,32,64");
    const Result b = bdm_run("converge --f two-kink --mu 1 --n 16,32,64 --plot '" + svg + "'");
    EXPECT_EQ(a.out, b.out);
    const std::string text = slurp(svg);
    EXPECT_EQ(text.rfind("<svg", 0), 0u);
    std::remove(svg.c_str());
}

TEST(Cli, BoundsBvBothVariants) {
    const Result r = bdm_run("bounds bv --f abs-half --n 100 --mu 1 --x 0.5 --variant both");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[1][4], "bv-proof");
    EXPECT_NEAR(std::stod(t[1][6]), 2 * 0.5 / std::sqrt(102.0), 1e-15);
    // the statement variant is violated here; --strict turns that into exit 2
    EXPECT_EQ(bdm_run("bounds bv --f abs-half --n 100 --mu 1 --x 0.5 --variant both --strict").code, 2);
    EXPECT_EQ(bdm_run("bounds bv --f abs-half --n 100 --mu 1 --x 0.5 --variant proof --strict").code, 0);
}

TEST(Cli, BoundsBvNeedsStructure) { EXPECT_EQ(bdm_run("bounds bv --f sqrt --n 100 --x 0.5").code, 1); }

TEST(Cli, BoundsDirectConstantsStable) {
    const Result r = bdm_run("bounds direct --f abs-half --mu 1 --n 64,256");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0][3], "SUP");
    const double c0 = std::stod(t[0][8].substr(t[0][8].find('=') + 1));
    const double c1 = std::stod(t[1][8].substr(t[1][8].find('=') + 1));
    EXPECT_LE(std::max(c0, c1) / std::min(c0, c1), 10.0);
}

TEST(Cli, BoundsLipSqrt) {
    const Result r = bdm_run("bounds lip --f sqrt --zeta 0.5 --alpha1 0 --alpha2 1 --n 100 --x 0.25");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_LE(std::stod(t[0][5]), std::stod(t[0][6]));
}

TEST(Cli, KappaTable) {
    const Result r = bdm_run("kappa --n 100 --mu 2 --x 0.5 --y-grid 101");
    ASSERT_EQ(r.code, 0);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 101u);
    EXPECT_EQ(std::stod(t.front()[1]), 0.0);
    EXPECT_NEAR(std::stod(t.back()[1]), 1.0, 1e-12);
    for (const auto& row : t) {
        const double y = std::stod(row[0]);
        if (y <= 0.4 + 1e-12) {
            EXPECT_LE(std::stod(row[1]), std::stod(row[2]));
        }
        if (y == 0.5) {
            EXPECT_TRUE(row[2].empty());
            EXPECT_TRUE(row[3].empty());
        }
    }
}

TEST(Cli, PiecewiseSpecAccepted) {
    const Result r = bdm_run("eval --f 'piecewise: 0, p(x)=x^2, 1/2, p(x)=x - 1/4, 1' --n 20 --grid 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(rows(r.out).size(), 3u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(bdm_run("eval --f nosuch --n 10").code, 1);
    EXPECT_EQ(bdm_run("eval --f e1 --n 10x").code, 1);
    EXPECT_EQ(bdm_run("eval --f e1 --n 10 --mu 0.5").code, 1);
    EXPECT_EQ(bdm_run("frobnicate", false).code, 1);
    EXPECT_EQ(bdm_run("", false).code, 1);
    EXPECT_EQ(bdm_run("kappa --n 10 --x 1.5").code, 1);
}

TEST(Cli, ThreadCountFromEnvironment) {
    const Result a = bdm_run("eval --f two-kink --n 50 --mu 1.5 --grid 101");
    const std::string cmd_env = "BDM_THREADS=3 ";
    const std::string csv = tmp("env.csv");
    const std::string cmd = cmd_env + "'" + BDM_CLI_PATH + "' eval --f two-kink --n 50 --mu 1.5 --grid 101 --out '" + csv + "'";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_EQ(slurp(csv), a.out);
    std::remove(csv.c_str());
    const std::string bad = "BDM_THREADS=zero '" + std::string(BDM_CLI_PATH) + "' eval --f e1 --n 10 >/dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 1);
}
