#include "prolate/zeta_compare.hpp"

#include "prolate/errors.hpp"
#include "prolate/semiclassical.hpp"

#include "json.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#ifndef PROLATE_DEFAULT_ZEROS
#define PROLATE_DEFAULT_ZEROS "data/zeta_zeros_100.txt"
#endif

namespace prolate {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, bool& ok) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    ok = end != s.c_str() && *end == '\0' && errno == 0 && std::isfinite(v);
    return v;
}

} // namespace

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ZetaZerosTable parse_zeros(std::istream& in, const std::string& source_id) {
    ZetaZerosTable t;
    t.source_id = source_id;
    std::string line, canonical;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        bool ok = false;
        const double v = parse_double(s, ok);
        if (!ok) throw FormatError(source_id + ":" + std::to_string(lineno) + ": not a number: '" + s + "'", lineno);
        if (!(v > 0.0))
            throw FormatError(source_id + ":" + std::to_string(lineno) + ": ordinate must be positive", lineno);
        if (!t.ordinates.empty() && !(v > t.ordinates.back()))
            throw FormatError(source_id + ":" + std::to_string(lineno) + ": ordinates must be strictly increasing",
                              lineno);
        t.ordinates.push_back(v);
        canonical += s;
        canonical += '\n';
    }
    if (t.ordinates.empty()) throw FormatError(source_id + ": no ordinates", lineno);
    t.checksum = fnv1a64_hex(canonical);
    return t;
}

ZetaZerosTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open zeros file '" + path + "'", 0);
    return parse_zeros(in, path);
}

std::string default_zeros_path() {
    if (const char* env = std::getenv("PROLATE_ZEROS"); env && *env) return env;
    return PROLATE_DEFAULT_ZEROS;
}

int zero_count(const ZetaZerosTable& table, double E) {
    if (table.ordinates.empty()) throw RangeError("zero_count: empty table");
    if (std::isnan(E) || E > table.ordinates.back())
        throw RangeError("zero_count: E = " + format_real(E) + " beyond the table ceiling " +
                         format_real(table.ordinates.back()));
    return static_cast<int>(std::upper_bound(table.ordinates.begin(), table.ordinates.end(), E) -
                            table.ordinates.begin());
}

double riemann_von_mangoldt(double E) {
    if (!(E > 0.0)) throw DomainError("riemann_von_mangoldt: E must be positive");
    const double e = E / (2.0 * std::numbers::pi);
    return e * (std::log(e) - 1.0) + 7.0 / 8.0;
}

int ComparisonReport::max_abs_delta() const {
    int m = 0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.delta));
    return m;
}

double ComparisonReport::mean_abs_delta() const {
    if (rows.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : rows) s += std::abs(r.delta);
    return s / rows.size();
}

double ComparisonReport::max_abs_predicted_delta() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.dirac_count - r.predicted_count));
    return m;
}

double ComparisonReport::mean_abs_pair_deviation() const {
    double s = 0.0;
    int n = 0;
    for (const auto& p : pairs) {
        if (!p.matched) continue;
        s += std::abs(p.deviation);
        ++n;
    }
    return n ? s / n : std::numeric_limits<double>::quiet_NaN();
}

std::vector<RankPair> pair_nearest(const DiracSpectrum& dirac, const ZetaZerosTable& table, double lo,
                                   double hi) {
    if (!(hi > lo)) throw DomainError("pair_nearest: requires lo < hi");
    if (hi > dirac.coverage)
        throw RangeError("pair_nearest: window reaches " + format_real(hi) + " but the spectrum is complete only up to " +
                         format_real(dirac.coverage));
    if (table.ordinates.empty() || hi > table.ordinates.back())
        throw RangeError("pair_nearest: window beyond the zero table");
    std::vector<double> eig, zer;
    for (double v : dirac.positive_imaginary())
        if (v > lo && v <= hi) eig.push_back(v);
    for (double g : table.ordinates)
        if (g > lo && g <= hi) zer.push_back(g);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<RankPair> out;
    const std::size_t n = std::max(eig.size(), zer.size());
    for (std::size_t i = 0; i < n; ++i) {
        RankPair p;
        p.matched = i < eig.size() && i < zer.size();
        p.eigenvalue = i < eig.size() ? eig[i] : nan;
        p.zero = i < zer.size() ? zer[i] : nan;
        p.deviation = p.matched ? p.zero - p.eigenvalue : nan;
        out.push_back(p);
    }
    return out;
}

ComparisonReport compare_counts(const DiracSpectrum& dirac, const ZetaZerosTable& table,
                                const std::vector<double>& E_grid, double pair_lo, double pair_hi) {
    ComparisonReport rep;
    rep.zeros_source = table.source_id;
    rep.zeros_checksum = table.checksum;
    for (std::size_t i = 0; i < E_grid.size(); ++i) {
        const double E = E_grid[i];
        if (!(E > 0.0)) throw DomainError("compare_counts: grid values must be positive");
        if (i > 0 && E < E_grid[i - 1]) throw DomainError("compare_counts: grid must be nondecreasing");
        if (E > dirac.coverage)
            throw RangeError("compare_counts: E = " + format_real(E) + " exceeds the spectrum coverage " +
                             format_real(dirac.coverage));
        ComparisonRow r;
        r.E = E;
        r.dirac_count = dirac.count_imaginary(E);
        r.zero_count = zero_count(table, E);
        r.predicted_count = predicted_dirac_count(E);
        r.delta = r.dirac_count - r.zero_count;
        if (!rep.rows.empty() &&
            (r.dirac_count < rep.rows.back().dirac_count || r.zero_count < rep.rows.back().zero_count))
            throw NumericError("compare_counts: counting function decreased");
        rep.rows.push_back(r);
    }
    if (pair_hi > pair_lo) {
        rep.pairs = pair_nearest(dirac, table, pair_lo, pair_hi);
        rep.pair_window_lo = pair_lo;
        rep.pair_window_hi = pair_hi;
    }
    return rep;
}

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw UsageError("format must be 'csv' or 'json', got '" + s + "'");
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

nlohmann::json real_json(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

std::string report_to_string(const ComparisonReport& report, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "E,dirac_count,zero_count,predicted_count,delta\n";
        for (const auto& r : report.rows)
            out << format_real(r.E) << ',' << r.dirac_count << ',' << r.zero_count << ','
                << format_real(r.predicted_count) << ',' << r.delta << '\n';
        return out.str();
    }
    nlohmann::json j;
    j["zeros_source"] = report.zeros_source;
    j["zeros_checksum"] = report.zeros_checksum;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
        j["rows"].push_back({{"E", r.E},
                             {"dirac_count", r.dirac_count},
                             {"zero_count", r.zero_count},
                             {"predicted_count", r.predicted_count},
                             {"delta", r.delta}});
    }
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : report.pairs) {
        j["pairs"].push_back({{"eigenvalue", real_json(p.eigenvalue)},
                              {"zero", real_json(p.zero)},
                              {"deviation", real_json(p.deviation)},
                              {"matched", p.matched}});
    }
    j["pair_window"] = {report.pair_window_lo, report.pair_window_hi};
    j["summary"] = {{"max_abs_delta", report.max_abs_delta()},
                    {"mean_abs_delta", report.mean_abs_delta()},
                    {"max_abs_predicted_delta", report.max_abs_predicted_delta()},
                    {"mean_abs_pair_deviation", real_json(report.mean_abs_pair_deviation())}};
    // nlohmann writes doubles in shortest round-trip form, which is lossless.
    return j.dump(2) + "\n";
}

void export_report(const ComparisonReport& report, ReportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << report_to_string(report, format);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

std::vector<ComparisonRow> read_report_csv(std::istream& in) {
    std::vector<ComparisonRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (trim(line) != "E,dirac_count,zero_count,predicted_count,delta")
                throw FormatError("report csv: unexpected header", lineno);
            continue;
        }
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
        if (cells.size() != 5) throw FormatError("report csv: expected 5 columns", lineno);
        bool ok[5];
        ComparisonRow r;
        r.E = parse_double(cells[0], ok[0]);
        r.dirac_count = static_cast<int>(parse_double(cells[1], ok[1]));
        r.zero_count = static_cast<int>(parse_double(cells[2], ok[2]));
        r.predicted_count = parse_double(cells[3], ok[3]);
        r.delta = static_cast<int>(parse_double(cells[4], ok[4]));
        if (!std::all_of(ok, ok + 5, [](bool b) { return b; })) throw FormatError("report csv: bad number", lineno);
        rows.push_back(r);
    }
    return rows;
}

} // namespace prolate
