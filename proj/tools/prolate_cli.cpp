// prolate: command-line front end.
//
// Exit status: 0 success, 2 usage error, 1 numeric or I/O failure.

#include "prolate/darboux.hpp"
#include "prolate/eigensolve.hpp"
#include "prolate/errors.hpp"
#include "prolate/geometry.hpp"
#include "prolate/semiclassical.hpp"
#include "prolate/zeta_compare.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

using namespace prolate;

namespace {

struct Common {
    double tol = 1.0;
    std::string out;
};

SolverOptions solver_options(const Common& common) {
    if (!(common.tol > 0.0)) throw UsageError("--tol must be positive");
    SolverOptions o;
    o.shooting.tol = o.shooting.tol.scaled(common.tol);
    return o;
}

// Writes to --out, or stdout when it is empty or "-".
void emit(const Common& common, const std::string& text) {
    if (common.out.empty() || common.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(common.out);
    if (!f) throw Error("cannot open '" + common.out + "' for writing");
    f << text;
    if (!f.flush()) throw Error("write to '" + common.out + "' failed");
}

struct SpectrumArgs {
    double lambda = 1.0;
    std::string parity = "even";
    std::string region = "outer";
    int count = 10;
    bool oracle = false;
    int grid = 0;
};

void cmd_spectrum(const Common& common, const SpectrumArgs& a) {
    if (a.count < 1) throw UsageError("--count must be at least 1");
    const ProlateProblem problem{a.lambda, parse_parity(a.parity), parse_region(a.region)};
    problem.validate();
    const SolverOptions opts = solver_options(common);
    const auto recs = problem.region == Region::inner ? inner_spectrum(a.lambda, problem.parity, a.count - 1, opts)
                                                      : outer_spectrum(a.lambda, problem.parity, a.count, opts);
    std::vector<EigenvalueRecord> oracle;
    if (a.oracle) {
        const int grid = a.grid > 0 ? a.grid : (problem.region == Region::inner ? 400 : 100);
        oracle = oracle_matrix_spectrum(problem, grid, a.count);
    }
    std::string text = a.oracle ? "index,mu,residual,method,replica,oracle_mu\n" : "index,mu,residual,method,replica\n";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        text += std::to_string(r.index) + ',' + format_real(r.mu) + ',' + format_real(r.residual) + ',' +
                to_string(r.method) + ',' + (r.replica ? "1" : "0");
        if (a.oracle) text += ',' + format_real(oracle[i].mu);
        text += '\n';
    }
    emit(common, text);
}

struct CountArgs {
    double lambda = std::numbers::sqrt2;
    double E_min = 5.0;
    double E_max = 60.0;
    int steps = 12;
};

void cmd_count(const Common& common, const CountArgs& a) {
    if (a.steps < 1) throw UsageError("--steps must be at least 1");
    if (!(a.E_min > 0.0) || a.E_max < a.E_min) throw UsageError("need 0 < --E-min <= --E-max");
    std::string text = "E,a,I_exact,sigma_asymptotic,predicted_count,predicted_dirac_count\n";
    for (int i = 0; i <= a.steps; ++i) {
        const double E = a.E_min + (a.E_max - a.E_min) * i / a.steps;
        const CountEstimate c = count_estimate(E, a.lambda);
        text += format_real(E) + ',' + format_real(c.a) + ',' + format_real(c.I_value) + ',' +
                format_real(c.sigma_asymptotic) + ',' + format_real(c.predicted_count) + ',' +
                format_real(predicted_dirac_count(E)) + '\n';
    }
    emit(common, text);
}

struct CompareArgs {
    std::string zeros;
    std::string parity = "even";
    double E_min = 15.0;
    double E_max = 60.0;
    double step = 0.5;
    std::string format = "csv";
};

void cmd_compare(const Common& common, const CompareArgs& a) {
    const ReportFormat format = parse_report_format(a.format);
    if (!(a.E_min > 0.0) || !(a.E_max > a.E_min)) throw UsageError("need 0 < --E-min < --E-max");
    if (!(a.step > 0.0)) throw UsageError("--step must be positive");
    if (a.parity != "even" && a.parity != "odd" && a.parity != "both")
        throw UsageError("--parity must be even, odd or both");
    const ZetaZerosTable table = load_zeros(a.zeros.empty() ? default_zeros_path() : a.zeros);
    const double lambda = std::numbers::sqrt2;
    const double mu_min = -std::pow(0.525 * a.E_max, 2);
    const SolverOptions opts = solver_options(common);
    std::vector<EigenvalueRecord> recs;
    for (Parity p : {Parity::even, Parity::odd}) {
        if (a.parity != "both" && parse_parity(a.parity) != p) continue;
        const auto part = outer_negative_spectrum(lambda, p, mu_min, opts);
        recs.insert(recs.end(), part.begin(), part.end());
    }
    const DiracSpectrum d = dirac_eigenvalues(lambda, recs, 2.0 * std::sqrt(-mu_min));
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((a.E_max - a.E_min) / a.step + 1e-9));
    for (int i = 0; i <= n; ++i) grid.push_back(a.E_min + i * a.step);
    const ComparisonReport report = compare_counts(d, table, grid, a.E_min, a.E_max);
    emit(common, report_to_string(report, format));
    std::cerr << "max |N_dirac - N_zeta| = " << report.max_abs_delta()
              << ", max |N_dirac - predicted| = " << format_real(report.max_abs_predicted_delta())
              << ", zeros " << report.zeros_checksum << '\n';
}

struct RiccatiArgs {
    double lambda = std::numbers::sqrt2;
    double z_re = 0.0;
    double z_im = 1.0;
    double x_min = 0.0;
    double x_max = 10.0;
    int points = 200;
};

void cmd_riccati(const Common& common, const RiccatiArgs& a) {
    if (a.points < 2) throw UsageError("--points must be at least 2");
    const double x_min = a.x_min > 0.0 ? a.x_min : a.lambda + 0.05;
    if (!(a.x_max > x_min)) throw UsageError("need --x-min < --x-max");
    const SolverOptions opts = solver_options(common);
    auto basis = std::make_shared<const ZeroModeBasis>(a.lambda, a.x_max, opts.shooting);
    const RiccatiSolution sol(basis, {a.z_re, a.z_im});
    std::string text = "x,re_w,im_w,residual\n";
    double worst = 0.0;
    for (int i = 0; i < a.points; ++i) {
        const double x = x_min + (a.x_max - x_min) * i / (a.points - 1.0);
        const std::complex<double> w = sol.w(x);
        const double r = sol.residual(x);
        worst = std::max(worst, r);
        text += format_real(x) + ',' + format_real(w.real()) + ',' + format_real(w.imag()) + ',' + format_real(r) + '\n';
    }
    emit(common, text);
    std::cerr << "max residual = " << format_real(worst) << '\n';
}

struct CurvesArgs {
    double c = 0.0;
    double x_min = 1.5;
    double x_max = 10.0;
    int samples = 200;
};

void cmd_curves(const Common& common, const CurvesArgs& a) {
    emit(common, curves_to_csv(null_curves(a.c, {a.x_min, a.x_max}, a.samples)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prolate spheroidal operator: spectra, counting, zeta comparison and geometry"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--tol", common.tol, "Scale factor applied to every integration tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    SpectrumArgs sp;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of one of the four problems");
    spectrum->add_option("--lambda", sp.lambda)->capture_default_str();
    spectrum->add_option("--parity", sp.parity)->check(CLI::IsMember({"even", "odd"}))->capture_default_str();
    spectrum->add_option("--region", sp.region)->check(CLI::IsMember({"inner", "outer"}))->capture_default_str();
    spectrum->add_option("--count", sp.count)->capture_default_str();
    spectrum->add_flag("--oracle", sp.oracle, "Add the matrix-oracle eigenvalue column");
    spectrum->add_option("--grid", sp.grid, "Oracle grid size (default 400 inner, 100 outer)");
    spectrum->add_option("--out", common.out, "Output path (stdout if omitted)");

    CountArgs ct;
    auto* count = app.add_subcommand("count", "Semiclassical count estimates on an E grid");
    count->add_option("--lambda", ct.lambda)->capture_default_str();
    count->add_option("--E-min", ct.E_min)->capture_default_str();
    count->add_option("--E-max", ct.E_max)->capture_default_str();
    count->add_option("--steps", ct.steps)->capture_default_str();
    count->add_option("--out", common.out);

    CompareArgs cp;
    auto* compare = app.add_subcommand("compare", "Dirac spectrum at lambda = sqrt 2 against zeta zeros");
    compare->add_option("--zeros", cp.zeros, "Zero table (default $PROLATE_ZEROS or the bundled table)");
    compare->add_option("--parity", cp.parity, "even, odd or both")->capture_default_str();
    compare->add_option("--E-min", cp.E_min)->capture_default_str();
    compare->add_option("--E-max", cp.E_max)->capture_default_str();
    compare->add_option("--step", cp.step)->capture_default_str();
    compare->add_option("--format", cp.format, "csv or json")->capture_default_str();
    compare->add_option("--out", common.out);

    RiccatiArgs rc;
    auto* riccati = app.add_subcommand("riccati", "w_z on a grid with the Riccati residual");
    riccati->add_option("--lambda", rc.lambda)->capture_default_str();
    riccati->add_option("--z-re", rc.z_re)->capture_default_str();
    riccati->add_option("--z-im", rc.z_im)->capture_default_str();
    riccati->add_option("--x-min", rc.x_min, "Default lambda + 0.05");
    riccati->add_option("--x-max", rc.x_max)->capture_default_str();
    riccati->add_option("--points", rc.points)->capture_default_str();
    riccati->add_option("--out", common.out);

    CurvesArgs cv;
    auto* curves = app.add_subcommand("curves", "Null curves t(x), v(x) of the two-dimensional geometry");
    curves->add_option("--c", cv.c)->capture_default_str();
    curves->add_option("--x-min", cv.x_min)->capture_default_str();
    curves->add_option("--x-max", cv.x_max)->capture_default_str();
    curves->add_option("--samples", cv.samples)->capture_default_str();
    curves->add_option("--out", common.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*spectrum) cmd_spectrum(common, sp);
        if (*count) cmd_count(common, ct);
        if (*compare) cmd_compare(common, cp);
        if (*riccati) cmd_riccati(common, rc);
        if (*curves) cmd_curves(common, cv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
