#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "prolate/errors.hpp"
#include "prolate/semiclassical.hpp"
#include "prolate/zeta_compare.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

using namespace prolate;

namespace {

ZetaZerosTable parse(const std::string& text) {
    std::istringstream in(text);
    return parse_zeros(in, "inline");
}

// Dirac spectrum whose Im xi are exactly the given values.
DiracSpectrum spectrum_at(const std::vector<double>& im, double coverage) {
    std::vector<EigenvalueRecord> recs;
    for (std::size_t i = 0; i < im.size(); ++i)
        recs.push_back({-0.25 * im[i] * im[i], static_cast<int>(i), 0.0, Method::shooting, false});
    return dirac_eigenvalues(std::numbers::sqrt2, recs, coverage);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("bundled zero table") {
    const ZetaZerosTable t = load_zeros(PROLATE_DEFAULT_ZEROS);
    REQUIRE(t.ordinates.size() == 100);
    CHECK(t.ordinates.front() == doctest::Approx(14.134725141734694).epsilon(1e-15));
    CHECK(t.ordinates[1] == doctest::Approx(21.022039638771555).epsilon(1e-15));
    CHECK(t.ordinates.back() == doctest::Approx(236.524229665816206).epsilon(1e-15));
    CHECK(t.checksum.size() == 16);
    // Comments and blank lines do not change the checksum.
    std::ifstream in(PROLATE_DEFAULT_ZEROS);
    std::stringstream ss;
    ss << "# extra comment\n\n" << in.rdbuf() << "\n";
    CHECK(parse_zeros(ss, "copy").checksum == t.checksum);
}

TEST_CASE("zero counting") {
    const ZetaZerosTable t = load_zeros(PROLATE_DEFAULT_ZEROS);
    CHECK(zero_count(t, 14.0) == 0);
    CHECK(zero_count(t, 15.0) == 1);
    CHECK(zero_count(t, 50.0) == 10);
    CHECK(zero_count(t, t.ordinates[9]) == 10);
    CHECK(zero_count(t, 236.0) == 99);
    CHECK_THROWS_AS(zero_count(t, 300.0), RangeError);
    // N(E) stays near the smooth count over the whole table.
    for (double E = 15.0; E <= 236.0; E += 1.0) CHECK(std::abs(zero_count(t, E) - riemann_von_mangoldt(E)) <= 3.0);
}

TEST_CASE("Riemann-von Mangoldt against the semiclassical asymptotic") {
    // The asymptotic Dirac count differs from the smooth zero count by the constant 4 - 7/8.
    for (double E : {10.0, 100.0, 1000.0})
        CHECK(predicted_dirac_count_asymptotic(E) - riemann_von_mangoldt(E) == doctest::Approx(3.125).epsilon(1e-12));
    CHECK_THROWS_AS(riemann_von_mangoldt(0.0), DomainError);
}

TEST_CASE("zero table parse errors") {
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("# only a comment\n"), FormatError);
    CHECK_THROWS_AS(parse("14.1\n21.0\nabc\n"), FormatError);
    CHECK_THROWS_AS(parse("14.1\n-2\n"), FormatError);
    CHECK_THROWS_AS(parse("21.0\n14.1\n"), FormatError);
    CHECK_THROWS_AS(parse("14.1\n14.1\n"), FormatError);
    CHECK_THROWS_AS(parse("14.1 21.0\n"), FormatError);
    try {
        parse("14.1\n\n21.0\nbad\n");
        FAIL("no throw");
    } catch (const FormatError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), FormatError);
}

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("rank pairing") {
    const ZetaZerosTable t = parse("14.134725\n21.022040\n25.010858\n30.424876\n32.935062\n37.586178\n");
    const std::vector<double> zeros(t.ordinates.begin(), t.ordinates.end() - 1);

    const auto exact = pair_nearest(spectrum_at(zeros, 40.0), t, 10.0, 33.0);
    REQUIRE(exact.size() == 5);
    for (const auto& p : exact) {
        CHECK(p.matched);
        CHECK(std::abs(p.deviation) <= 1e-12);
    }

    std::vector<double> shifted;
    for (double g : zeros) shifted.push_back(g - 0.25);
    const auto s = pair_nearest(spectrum_at(shifted, 40.0), t, 10.0, 33.0);
    REQUIRE(s.size() == 5);
    for (const auto& p : s) CHECK(p.deviation == doctest::Approx(0.25));

    // One eigenvalue missing: the extra zero is unmatched.
    std::vector<double> fewer(zeros.begin(), zeros.end() - 1);
    const auto f = pair_nearest(spectrum_at(fewer, 40.0), t, 10.0, 33.0);
    REQUIRE(f.size() == 5);
    CHECK_FALSE(f.back().matched);
    CHECK(std::isnan(f.back().eigenvalue));

    CHECK_THROWS_AS(pair_nearest(spectrum_at(zeros, 30.0), t, 10.0, 33.0), RangeError);
    CHECK_THROWS_AS(pair_nearest(spectrum_at(zeros, 45.0), t, 10.0, 38.0), RangeError);
    CHECK_THROWS_AS(pair_nearest(spectrum_at(zeros, 40.0), t, 20.0, 10.0), DomainError);
}

TEST_CASE("count comparison") {
    const ZetaZerosTable t = load_zeros(PROLATE_DEFAULT_ZEROS);
    std::vector<double> im(t.ordinates.begin(), t.ordinates.begin() + 20);
    const DiracSpectrum d = spectrum_at(im, 70.0);
    const ComparisonReport r = compare_counts(d, t, {15.0, 30.0, 45.0, 60.0}, 14.0, 60.0);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.max_abs_delta() == 0);
    CHECK(r.mean_abs_delta() == 0.0);
    CHECK(r.rows[1].zero_count == 3);
    CHECK(r.rows[3].predicted_count == doctest::Approx(predicted_dirac_count(60.0)));
    CHECK(r.mean_abs_pair_deviation() == doctest::Approx(0.0));
    CHECK(r.zeros_checksum == t.checksum);
    CHECK_THROWS_AS(compare_counts(d, t, {80.0}), RangeError);
    CHECK_THROWS_AS(compare_counts(d, t, {30.0, 20.0}), DomainError);
    CHECK(std::isnan(ComparisonReport{}.mean_abs_pair_deviation()));
}

TEST_CASE("report formats") {
    CHECK(parse_report_format("csv") == ReportFormat::csv);
    CHECK(parse_report_format("json") == ReportFormat::json);
    CHECK_THROWS_AS(parse_report_format("xml"), UsageError);
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("golden synthetic report") {
    ComparisonReport r;
    r.rows = {{15.0, 1, 1, 0.5, 0}, {20.25, 2, 1, 4.0 / 3.0, 1}, {100.0, 28, 29, 28.125, -1}};
    const std::string golden = read_file(PROLATE_GOLDEN_DIR "/synthetic_report.csv");
    CHECK(report_to_string(r, ReportFormat::csv) == golden);
}

TEST_CASE("CSV and JSON round-trip") {
    const ZetaZerosTable t = load_zeros(PROLATE_DEFAULT_ZEROS);
    std::vector<double> im;
    for (double g : t.ordinates) im.push_back(g * (1.0 + 1e-3 * std::sin(g)));
    const DiracSpectrum d = spectrum_at(im, 200.0);
    std::vector<double> grid;
    for (double E = 15.0; E <= 60.0; E += 0.37) grid.push_back(E);
    const ComparisonReport r = compare_counts(d, t, grid, 15.0, 60.0);

    std::istringstream in(report_to_string(r, ReportFormat::csv));
    const auto back = read_report_csv(in);
    REQUIRE(back.size() == r.rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].E == r.rows[i].E);
        CHECK(back[i].predicted_count == r.rows[i].predicted_count);
        CHECK(back[i].dirac_count == r.rows[i].dirac_count);
        CHECK(back[i].delta == r.rows[i].delta);
    }

    const auto path = std::filesystem::temp_directory_path() / "prolate_report_test.json";
    export_report(r, ReportFormat::json, path.string());
    const auto j = nlohmann::json::parse(read_file(path.string()));
    std::filesystem::remove(path);
    CHECK(j["zeros_checksum"] == t.checksum);
    REQUIRE(j["rows"].size() == r.rows.size());
    CHECK(j["rows"][3]["predicted_count"].get<double>() == r.rows[3].predicted_count);
    CHECK(j["pairs"].size() == r.pairs.size());
    CHECK(j["summary"]["max_abs_delta"] == r.max_abs_delta());

    CHECK_THROWS_AS(export_report(r, ReportFormat::csv, "/nonexistent/dir/out.csv"), Error);
    std::istringstream bad_header("x,y\n1,2\n");
    CHECK_THROWS_AS(read_report_csv(bad_header), FormatError);
    std::istringstream bad_row("E,dirac_count,zero_count,predicted_count,delta\n1,2,3\n");
    CHECK_THROWS_AS(read_report_csv(bad_row), FormatError);
}
