#ifndef PROLATE_ZETA_COMPARE_HPP
#define PROLATE_ZETA_COMPARE_HPP

#include "prolate/darboux.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace prolate {

/// Ordinates of nontrivial zeta zeros read from a text table.
struct ZetaZerosTable {
    std::vector<double> ordinates; // strictly increasing, positive
    std::string source_id;         // path or label the table was read from
    std::string checksum;          // FNV-1a 64 of the data lines, 16 hex digits
};

/// Parses one ordinate per line; blank lines and lines starting with '#' are skipped.
/// Throws FormatError naming the first bad line (unparsable, non-positive, not increasing,
/// or an empty table).
ZetaZerosTable parse_zeros(std::istream& in, const std::string& source_id);
ZetaZerosTable load_zeros(const std::string& path);

/// $PROLATE_ZEROS if set, else the table installed with the sources.
std::string default_zeros_path();

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// #{gamma <= E}. Throws RangeError for E beyond the last ordinate.
int zero_count(const ZetaZerosTable& table, double E);

/// Smooth zero count (E / 2 pi)(log(E / 2 pi) - 1) + 7/8.
double riemann_von_mangoldt(double E);

struct ComparisonRow {
    double E = 0.0;
    int dirac_count = 0;
    int zero_count = 0;
    double predicted_count = 0.0;
    int delta = 0; // dirac_count - zero_count
};

/// Rank-paired eigenvalue and zero; an unmatched entry has the other side NaN.
struct RankPair {
    double eigenvalue = 0.0;
    double zero = 0.0;
    double deviation = 0.0; // zero - eigenvalue
    bool matched = true;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::vector<RankPair> pairs;
    double pair_window_lo = 0.0;
    double pair_window_hi = 0.0;
    std::string zeros_source;
    std::string zeros_checksum;

    int max_abs_delta() const;
    double mean_abs_delta() const;
    /// max |dirac_count - predicted_count| over the grid.
    double max_abs_predicted_delta() const;
    /// Mean |deviation| over matched pairs; NaN when there are none.
    double mean_abs_pair_deviation() const;
};

/// Order-preserving pairing of Im xi > 0 and gamma inside (lo, hi]. Unequal counts pad
/// the longer side with unmatched entries. Throws RangeError if the window is not covered.
std::vector<RankPair> pair_nearest(const DiracSpectrum& dirac, const ZetaZerosTable& table, double lo,
                                   double hi);

/// Counts on a nondecreasing grid, plus rank pairs on (pair_lo, pair_hi] when pair_hi > pair_lo.
/// Throws RangeError when the grid exceeds the spectrum coverage or the zero table.
ComparisonReport compare_counts(const DiracSpectrum& dirac, const ZetaZerosTable& table,
                                const std::vector<double>& E_grid, double pair_lo = 0.0, double pair_hi = 0.0);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(const std::string& s); // throws UsageError

/// CSV: E, dirac_count, zero_count, predicted_count, delta. JSON mirrors the whole report.
/// Reals are written with 17 significant digits. Throws Error on I/O failure.
void export_report(const ComparisonReport& report, ReportFormat format, const std::string& path);
std::string report_to_string(const ComparisonReport& report, ReportFormat format);

/// Reads the rows back from the CSV form. Throws FormatError.
std::vector<ComparisonRow> read_report_csv(std::istream& in);

/// Formats a double with 17 significant digits.
std::string format_real(double v);

} // namespace prolate

#endif
