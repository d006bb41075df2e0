// Acceptance report: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--documented-failures 7,8]
// Exit status is 0 when every failing criterion is in the documented list, 1 otherwise.

#include "prolate/darboux.hpp"
#include "prolate/eigensolve.hpp"
#include "prolate/errors.hpp"
#include "prolate/geometry.hpp"
#include "prolate/local_solutions.hpp"
#include "prolate/semiclassical.hpp"
#include "prolate/zeta_compare.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace prolate;

namespace {

constexpr double pi = std::numbers::pi;
const double root2 = std::numbers::sqrt2;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome elliptic_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double a : {1.5, 2.0, 10.0, 100.0, 1e4, 1e6}) {
        const double I = I_of_a(a);
        worst = std::max(worst, std::abs(I - I_direct(a)) / (1.0 + std::abs(I)));
    }
    const double at_one = std::abs(I_of_a(1.0) - 1.0);
    const double secs = seconds_since(t0);
    return {worst <= 1e-8 && at_one <= 1e-12 && secs < 5.0,
            "max rel diff " + fmt("%.2e", worst) + " (tol 1e-8), |I(1)-1| " + fmt("%.1e", at_one) +
                " (tol 1e-12), " + fmt("%.2f", secs) + " s (limit 5)"};
}

Outcome scaling_relation() {
    double worst = 0.0;
    for (double a : {4.0, 100.0, 1e4}) {
        const double direct = I_lambda_direct(root2, a);
        worst = std::max(worst, std::abs(I_lambda(root2, a) - direct) / std::abs(direct));
    }
    return {worst <= 1e-8, "max rel diff " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome asymptotic_expansion() {
    const double a = 1e8;
    const double ratio = (I_of_a(a) - I_asymptotic(a)) / (-(std::log(a) + 4.0 * std::log(2.0)) / (8.0 * std::sqrt(a)));
    return {std::abs(ratio - 1.0) <= 0.1, "remainder / next term = " + fmt("%.6f", ratio) + " (tol 10%)"};
}

Outcome sigma_algebra() {
    double worst = 0.0;
    for (double E : {10.0, 100.0, 1000.0}) {
        const double e = E / (2.0 * pi);
        const double target = e * (std::log(e) - 1.0) + 4.0;
        worst = std::max(worst, std::abs(2.0 * sigma(E / 2.0, root2).asymptotic - target) / std::abs(target));
    }
    return {worst <= 1e-12, "max rel diff " + fmt("%.2e", worst) + " (tol 1e-12)"};
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double lambda : {1.0, root2}) {
        for (Parity parity : {Parity::even, Parity::odd}) {
            const auto inner = inner_spectrum(lambda, parity, 9);
            const auto inner_oracle = oracle_matrix_spectrum({lambda, parity, Region::inner}, 400, 10);
            const auto outer = outer_spectrum(lambda, parity, 10);
            const auto outer_oracle = oracle_matrix_spectrum({lambda, parity, Region::outer}, 100, 10);
            for (int k = 0; k < 10; ++k) {
                worst = std::max(worst, std::abs(inner[k].mu - inner_oracle[k].mu) / std::abs(inner[k].mu));
                worst = std::max(worst, std::abs(outer[k].mu - outer_oracle[k].mu) / std::abs(outer[k].mu));
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-5 && secs < 120.0,
            "max rel diff " + fmt("%.2e", worst) + " over 80 eigenvalues (tol 1e-5), " + fmt("%.1f", secs) +
                " s (limit 120)"};
}

Outcome inner_asymptotics() {
    const auto chi = inner_spectrum(1.0, Parity::even, 21);
    double worst = 0.0;
    for (int n = 10; n <= 20; ++n)
        worst = std::max(worst, std::abs(chi[n + 1].mu - 2.0 * chi[n].mu + chi[n - 1].mu - 8.0));
    return {worst <= 0.5, "max |d2 chi - 8| " + fmt("%.4f", worst) + " for n = 10..20 (tol 0.5)"};
}

// Extremes of count(E) - predicted(E); the step function is probed on both sides of each jump.
std::pair<double, double> count_deviation(const std::vector<double>& jumps, double E_lo, double E_hi,
                                          const std::function<int(double)>& count,
                                          const std::function<double(double)>& predicted) {
    std::vector<double> probes;
    for (double E = E_lo; E <= E_hi; E += 0.05) probes.push_back(E);
    for (double j : jumps) {
        if (j - 1e-9 > E_lo && j - 1e-9 < E_hi) probes.push_back(j * (1.0 - 1e-12));
        if (j >= E_lo && j <= E_hi) probes.push_back(j);
    }
    probes.push_back(E_hi);
    double lo = 1e300, hi = -1e300;
    for (double E : probes) {
        const double d = count(E) - predicted(E);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

Outcome semiclassical_counting() {
    std::ostringstream detail;
    bool pass = true;
    for (double lambda : {1.0, root2}) {
        for (Parity parity : {Parity::even, Parity::odd}) {
            const auto recs = outer_spectrum(lambda, parity, 50);
            std::vector<double> E_jumps;
            for (const auto& r : recs) E_jumps.push_back(std::sqrt(-r.mu));
            auto count = [&](double E) {
                return static_cast<int>(std::count_if(E_jumps.begin(), E_jumps.end(), [&](double j) { return j <= E; }));
            };
            auto predicted = [&](double E) { return 2.0 * sigma(E, lambda).exact; };
            const auto [lo, hi] = count_deviation(E_jumps, 0.5, E_jumps.back(), count, predicted);
            if (std::max(-lo, hi) > 3.0) pass = false;
            detail << "lambda=" << fmt("%.4f", lambda) << ' ' << to_string(parity) << " dev in [" << fmt("%.2f", lo)
                   << ", " << fmt("%.2f", hi) << "]; ";
        }
    }
    detail << "tol 3";
    return {pass, detail.str()};
}

Outcome dirac_vs_zeta() {
    const double E_max = 60.0;
    const double mu_min = -std::pow(E_max / 2.0 * 1.05, 2);
    const auto recs = outer_negative_spectrum(root2, Parity::even, mu_min);
    const DiracSpectrum d = dirac_eigenvalues(root2, recs, 2.0 * std::sqrt(-mu_min));
    const ZetaZerosTable zeros = load_zeros(default_zeros_path());
    std::vector<double> jumps = d.positive_imaginary();
    jumps.insert(jumps.end(), zeros.ordinates.begin(), zeros.ordinates.end());
    const auto [zlo, zhi] = count_deviation(
        jumps, 15.0, E_max, [&](double E) { return d.count_imaginary(E) - zero_count(zeros, E); },
        [](double) { return 0.0; });
    const auto [plo, phi] = count_deviation(
        jumps, 15.0, E_max, [&](double E) { return d.count_imaginary(E); }, predicted_dirac_count);
    const double zdev = std::max(-zlo, zhi), pdev = std::max(-plo, phi);
    return {zdev <= 3.0 && pdev <= 3.0,
            "max |N_dirac - N_zeta| " + fmt("%.0f", zdev) + ", N_dirac - predicted in [" + fmt("%.2f", plo) + ", " +
                fmt("%.2f", phi) + "] on E in [15, 60] (tol 3 each)"};
}

Outcome riccati() {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(root2 + 0.05 + (10.0 - root2 - 0.05) * i / 400.0);
    double worst = 0.0;
    using cplx = std::complex<double>;
    for (cplx z : {cplx(0, 1), cplx(0, -1), cplx(1, 1), cplx(0, 3)})
        worst = std::max(worst, riccati_residual(root2, z, grid));
    return {worst <= 1e-8, "max residual " + fmt("%.2e", worst) + " on [lambda+0.05, 10] (tol 1e-8)"};
}

Outcome darboux_factorization() {
    const std::vector<TestFunction> bumps{make_bump(1.6, 2.2), make_bump(2.0, 4.0), make_bump(3.0, 7.0, 2.5)};
    const FactorizationResidual r = factorization_residual(root2, {0.0, 1.0}, bumps);
    return {r.first <= 1e-5 && r.second <= 1e-5,
            "relative residuals " + fmt("%.2e", r.first) + ", " + fmt("%.2e", r.second) + " (tol 1e-5)"};
}

// f_mu on the outer half line from the dense continuation, then a S + b C beyond it.
std::function<double(double)> outer_eigenfunction(double lambda, double mu) {
    auto traj = std::make_shared<OdeTrajectory>();
    const OuterConnection c = connect_to_infinity(lambda, mu, {}, traj.get());
    return [=](double x) {
        if (x <= traj->x_end()) return traj->at(x).value;
        const AsymptoticBasis b = asymptotic_basis(lambda, mu, x);
        return c.a * b.S + c.b * b.C;
    };
}

Outcome sonin_identity() {
    const double lambda = 1.0;
    const double mu = outer_spectrum(lambda, Parity::even, 3)[2].mu;
    const auto f = outer_eigenfunction(lambda, mu);
    std::vector<double> phi_hat, xi;
    for (int i = 0; i <= 320; ++i) {
        const double x = 2.0 + 8.0 * i / 320.0;
        phi_hat.push_back(2.0 * borel_fourier_eval(lambda, mu, x).value.real());
        xi.push_back(f(x));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        num += phi_hat[i] * xi[i];
        den += xi[i] * xi[i];
    }
    const double c = num / den;
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        err += std::pow(phi_hat[i] - c * xi[i], 2);
        norm += std::pow(phi_hat[i], 2);
    }
    const double rel = std::sqrt(err / norm);
    return {rel <= 1e-3, "mu = " + fmt("%.6f", mu) + ", scalar " + fmt("%.6f", c) + ", relative L2 error " +
                             fmt("%.2e", rel) + " on [2, 10] (tol 1e-3)"};
}

Outcome geometry_check() {
    double worst = 0.0;
    int n = 0;
    // Eighth-order central differences of the emitted curves, step scaled to the horizon distance.
    static constexpr std::array<double, 4> w{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    for (XRange r : {XRange{1.5, 10.0}, XRange{-1.35, 1.35}, XRange{-10.0, -1.5}}) {
        const auto [t, v] = null_curves(0.25, r, 200);
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            const double x = t.points[i].first;
            const double h = 0.02 * std::min(std::abs(x - root2), std::abs(x + root2));
            double dt = 0.0, dv = 0.0;
            for (int j = 0; j < 4; ++j) {
                dt += w[j] * (null_t(x + (j + 1) * h, 0.25) - null_t(x - (j + 1) * h, 0.25));
                dv += w[j] * (null_v(x + (j + 1) * h, 0.25) - null_v(x - (j + 1) * h, 0.25));
            }
            dt /= h;
            dv /= h;
            const double et = 1.0 / metric_alpha(x), ev = 1.0 / (2.0 * (x * x - 2.0));
            worst = std::max({worst, std::abs(dt - et) / std::abs(et), std::abs(dv - ev) / std::abs(ev)});
            ++n;
        }
    }
    return {worst <= 1e-10, "max rel derivative error " + fmt("%.2e", worst) + " over " + std::to_string(n) +
                                " samples (tol 1e-10)"};
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> documented;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--documented-failures") == 0 && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string tok; std::getline(ss, tok, ',');) documented.insert(std::stoi(tok));
        } else {
            std::fprintf(stderr, "usage: %s [--documented-failures N,M,...]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"elliptic identity", elliptic_identity},
        {"scaling relation", scaling_relation},
        {"asymptotic expansion", asymptotic_expansion},
        {"sigma algebra", sigma_algebra},
        {"oracle equivalence", oracle_equivalence},
        {"inner asymptotics", inner_asymptotics},
        {"semiclassical counting", semiclassical_counting},
        {"dirac vs zeta", dirac_vs_zeta},
        {"riccati residual", riccati},
        {"darboux factorization", darboux_factorization},
        {"sonin fourier identity", sonin_identity},
        {"geometry null curves", geometry_check},
    };

    int unexpected = 0, passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%-4s %2d %-24s %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str(), !o.pass && documented.count(id) ? " [documented]" : "");
        std::fflush(stdout);
        if (o.pass)
            ++passed;
        else if (!documented.count(id))
            ++unexpected;
    }
    std::printf("%d/%zu criteria pass, %d undocumented failure(s)\n", passed, criteria.size(), unexpected);
    return unexpected ? 1 : 0;
}
