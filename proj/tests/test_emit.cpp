#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hdecay/emit.hpp"
#include "hdecay/gaussians.hpp"
#include "reference.hpp"

using namespace hdecay;
using oracle::rel_err;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<double> fields_of(const std::string& line) {
    std::vector<double> out;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(std::strtod(cell.c_str(), nullptr));
    return out;
}

}  // namespace

TEST_CASE("number formatting round-trips every double") {
    const double values[] = {0.0,     -0.0,   1.0,       M_PI,   4.1989682e-10,
                             -2.5e17, 1e308,  5e-324,    0.1,    -123.456789,
                             6.02214076e23, 2.2250738585072014e-308};
    for (const double v : values) {
        CAPTURE(v);
        const std::string s = format_number(v);
        char* end = nullptr;
        const double back = std::strtod(s.c_str(), &end);
        CHECK(*end == '\0');
        CHECK(back == v);
        CHECK(std::signbit(back) == std::signbit(v));
    }
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("constants emit as flat JSON with stable keys") {
    const DecayConstants dc = solve_lemma21({0.3, 1.2});
    const std::string json = constants_json(dc, identity_residuals(dc));
    CHECK(json.front() == '{');
    CHECK(json.substr(json.size() - 2) == "}\n");
    for (const char* key : {"\"a\"", "\"b\"", "\"mu\"", "\"nu\"", "\"A\"", "\"tau\"",
                            "\"theta0\"", "\"theta1\"", "\"m\"", "\"rate_ab\"",
                            "\"rate_munu\"", "\"angle0_sin\"", "\"angle0_cos\"",
                            "\"angle1_sin\"", "\"angle1_cos\""}) {
        CAPTURE(key);
        CHECK(json.find(key) != std::string::npos);
    }
    // Byte-frozen against the library's own double (one ulp above the
    // correctly rounded value; accuracy itself is gated in the constants
    // tests) — this line pins the %.16e format and the key casing.
    CHECK(json.find("\"A\": 5.9274897836381923e-01") != std::string::npos);
    CHECK(json.find("near_degenerate") == std::string::npos);
    CHECK(json.find(",\n}") == std::string::npos);

    const DecayConstants edge = solve_lemma21({1.0 - 5e-13, 1.0});
    const std::string ej = constants_json(edge, identity_residuals(edge));
    CHECK(ej.find("\"near_degenerate\": true") != std::string::npos);
}

TEST_CASE("coefficient tables freeze their row format") {
    CoefficientSequence seq;
    seq.entries.resize(3);
    seq.set(0, LogComplex{0.0, 0.0});
    seq.set_zero(1);
    seq.set(2, LogComplex{std::log(0.5), 1.0});
    const DecayConstants dc = solve_lemma21({0.6, 0.6});
    const std::string csv = coeffs_csv(seq, dc);
    const auto rows = lines_of(csv);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "n,log10_abs,phase_rad,log10_envelope");
    CHECK(rows[1] ==
          "0,0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00");
    CHECK(rows[2] == "1,-inf,0.0000000000000000e+00,-1.5051499783199057e-01");
    const auto f = fields_of(rows[3]);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == 2.0);
    CHECK(rel_err(f[1], std::log10(0.5)) < 1e-15);
    CHECK(f[2] == 1.0);
    CHECK(rel_err(f[3], (-0.25 * std::log(2.0) + std::log(0.5)) / std::log(10.0)) < 1e-15);
}

TEST_CASE("ray tables carry base-10 columns and a summary line") {
    RayBoundReport report;
    report.theta = 0.3;
    report.r_samples = {1.0, 2.0};
    report.log_transform = {0.5, 2.0};
    report.log_bound = {1.0, 1.5};
    report.max_excess = 0.5;
    report.applicable_bound = BoundTag::eq3;
    const std::string csv = ray_csv(report);
    const auto rows = lines_of(csv);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "r,log10_abs_Bf,log10_bound,excess");
    const double ln10 = std::log(10.0);
    for (int i = 0; i < 2; ++i) {
        const auto f = fields_of(rows[1 + i]);
        REQUIRE(f.size() == 4);
        CHECK(f[0] == report.r_samples[i]);
        CHECK(rel_err(f[1], report.log_transform[i] / ln10) < 1e-15);
        CHECK(rel_err(f[2], report.log_bound[i] / ln10) < 1e-15);
        CHECK(rel_err(f[3], (report.log_transform[i] - report.log_bound[i]) / ln10) < 1e-15);
    }
    CHECK(rows[3] == "# max_excess = " + format_number(0.5 / ln10));
}

TEST_CASE("plots render both table kinds deterministically") {
    const auto seq = closed_form_coefficients(extremal_function({0.6, 0.6}), 80);
    const DecayConstants dc = solve_lemma21({0.6, 0.6});
    const std::string csv = coeffs_csv(seq, dc);
    const std::string svg = svg_from_csv(csv);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg_from_csv(csv) == svg);

    RayBoundReport report;
    report.theta = 0.3;
    report.r_samples = {1.0, 2.0, 3.0, 4.0};
    report.log_transform = {0.5, 2.0, 4.0, 7.0};
    report.log_bound = {1.0, 2.5, 4.5, 7.5};
    report.max_excess = -0.5;
    report.applicable_bound = BoundTag::eq5;
    const std::string rsvg = svg_from_csv(ray_csv(report));
    CHECK(rsvg.rfind("<svg", 0) == 0);
    CHECK(rsvg.find("polyline") != std::string::npos);
}

TEST_CASE("zero rows plot as gaps, not points") {
    CoefficientSequence seq;
    seq.entries.resize(6);
    for (int n = 0; n < 6; ++n) seq.set_zero(n);
    seq.set(0, LogComplex{0.0, 0.0});
    seq.set(2, LogComplex{-1.0, 0.0});
    seq.set(4, LogComplex{-2.0, 0.0});
    const std::string svg = svg_from_csv(coeffs_csv(seq, solve_lemma21({0.6, 0.6})));
    CHECK(svg.find("-inf") == std::string::npos);
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(svg_from_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(svg_from_csv("just,some,words\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(svg_from_csv("n,log10_abs,phase_rad,log10_envelope\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(svg_from_csv("n,log10_abs,phase_rad,log10_envelope\n0,1.0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(svg_from_csv("n,log10_abs,phase_rad,log10_envelope\n0,zzz,0,0\n"),
                    std::invalid_argument);
    // rows whose ordinates are all gaps leave nothing to draw
    CHECK_THROWS_AS(svg_from_csv("n,log10_abs,phase_rad,log10_envelope\n"
                                 "0,-inf,0.0000000000000000e+00,-inf\n"),
                    std::invalid_argument);
}
