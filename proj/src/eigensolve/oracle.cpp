// Matrix oracle: a three-point finite-volume discretization of the quadratic form of W in a
// variable that removes the singular end point, solved by Sturm-sequence bisection.
// It shares no code with the shooting path beyond the coefficient definitions.
#include "prolate/eigensolve.hpp"

#include "prolate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace prolate {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

// Symmetric tridiagonal pencil (A, M) with diagonal mass.
struct Pencil {
    std::vector<double> diag;
    std::vector<double> off; // off[i] couples i and i+1
    std::vector<double> mass;
};

// Number of negative eigenvalues of A - mu M (Sylvester inertia via the LDL^T pivots).
int negative_count(const Pencil& pc, double mu, double boundary_shift = 0.0) {
    const std::size_t n = pc.diag.size();
    int count = 0;
    double piv = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = pc.diag[i] - mu * pc.mass[i];
        if (i + 1 == n) d += boundary_shift;
        if (i > 0) d -= pc.off[i - 1] * pc.off[i - 1] / piv;
        if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(pc.diag[i]) + 1.0);
        if (d < 0.0) ++count;
        piv = d;
    }
    return count;
}

// ---------------------------------------------------------------- inner problem

Pencil inner_pencil(double lambda, Parity parity, int cells) {
    const double h = 0.5 * pi / cells;
    const double k2 = std::pow(2.0 * pi * lambda, 2);
    const int first = parity == Parity::odd ? 1 : 0;
    Pencil pc;
    for (int i = first; i <= cells; ++i) {
        const double ta = std::max(0.0, (i - 0.5) * h);
        const double tb = std::min(0.5 * pi, (i + 0.5) * h);
        const double xa = lambda * std::sin(ta), xb = lambda * std::sin(tb);
        const double w_left = i > 0 ? lambda * std::cos((i - 0.5) * h) / h : 0.0;
        const double w_right = i < cells ? lambda * std::cos((i + 0.5) * h) / h : 0.0;
        pc.mass.push_back(xb - xa);
        pc.diag.push_back(w_left + w_right + k2 * (xb * xb * xb - xa * xa * xa) / 3.0);
        if (i < cells) pc.off.push_back(-w_right);
    }
    return pc;
}

// k-th (0-based) eigenvalue of a pencil whose count function is monotone.
double kth_eigenvalue(const std::function<int(double)>& count, int k, double lo, double hi) {
    for (int it = 0; count(hi) <= k; ++it) {
        if (it > 60) throw NumericError("oracle: eigenvalue bracket not found");
        hi += std::max(1.0, std::abs(hi));
    }
    for (int it = 0; count(lo) > k; ++it) {
        if (it > 60) throw NumericError("oracle: eigenvalue bracket not found");
        lo -= std::max(1.0, std::abs(lo));
    }
    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)) + 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count(mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> inner_eigenvalues(double lambda, Parity parity, int cells, int count) {
    const Pencil pc = inner_pencil(lambda, parity, cells);
    const double c = 2.0 * pi * lambda * lambda;
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        const int m = 2 * k + (parity == Parity::odd ? 1 : 0);
        out.push_back(kth_eigenvalue([&](double mu) { return negative_count(pc, mu); }, k, -1.0,
                                     m * (m + 1.0) + c * c + 10.0));
    }
    return out;
}

// ---------------------------------------------------------------- outer problem

// Outgoing solution xi = e^{-ikx} sum_n c_n x^{-n-1} from the recurrence obtained by
// substituting the ansatz into ((x^2 - l^2) xi')' + (k^2 x^2 - mu) xi = 0. Returns (xi, xi').
std::pair<cplx, cplx> outgoing_solution(double lambda, double mu, double X) {
    const double k = 2.0 * pi * lambda;
    const double l2 = lambda * lambda;
    const cplx ik(0.0, k);
    // Terms t_n = c_n X^{-n}; recurrence rewritten for t_n to avoid overflow.
    std::vector<cplx> t{1.0};
    double best = std::numeric_limits<double>::infinity();
    std::size_t stop = 1;
    for (int m = 0; m < 4000; ++m) {
        cplx rhs = -(m * (m + 1.0) + k * k * l2 - mu) * t[m] / X;
        if (m >= 1) rhs += 2.0 * ik * l2 * static_cast<double>(m) * t[m - 1] / (X * X);
        if (m >= 2) rhs += l2 * m * (m - 1.0) * t[m - 2] / (X * X * X);
        t.push_back(rhs / (2.0 * ik * (m + 1.0)));
        const double mag = std::abs(t.back());
        if (mag < best) {
            best = mag;
            stop = t.size() - 1;
        } else if (m > 4.0 * pi * lambda * X + 10.0) {
            break;
        }
    }
    if (best > 1e-13) throw NumericError("oracle: asymptotic boundary condition not accurate at X");
    cplx s{0.0, 0.0}, ds{0.0, 0.0};
    for (std::size_t n = 0; n < stop; ++n) {
        s += t[n] / X;
        ds += -static_cast<double>(n + 1) * t[n] / (X * X);
    }
    const cplx e = std::exp(cplx(0.0, -k * X));
    return {e * s, e * (ds - ik * s)};
}

// Log-derivative at X of the member the outer problem keeps: S (even) or C (odd).
// With h = i xi_out: S = Re h = -Im xi_out and C = Im h = Re xi_out.
double robin_coefficient(double lambda, Parity parity, double mu, double X) {
    auto [xi, dxi] = outgoing_solution(lambda, mu, X);
    if (parity == Parity::even) return dxi.imag() / xi.imag();
    return dxi.real() / xi.real();
}

struct OuterGrid {
    Pencil pencil;
    double X;
    double p_end; // X^2 - lambda^2
};

OuterGrid outer_grid(double lambda, double X, int per_wavelength) {
    const double U = std::acosh(X / lambda);
    const double hu_target = 1.0 / (lambda * X * per_wavelength);
    const int cells = std::max(50, static_cast<int>(std::ceil(U / hu_target)));
    const double h = U / cells;
    const double k2 = std::pow(2.0 * pi * lambda, 2);
    OuterGrid g;
    g.X = X;
    g.p_end = X * X - lambda * lambda;
    Pencil& pc = g.pencil;
    for (int i = 0; i <= cells; ++i) {
        const double ua = std::max(0.0, (i - 0.5) * h);
        const double ub = std::min(U, (i + 0.5) * h);
        const double xa = lambda * std::cosh(ua), xb = lambda * std::cosh(ub);
        const double w_left = i > 0 ? lambda * std::sinh((i - 0.5) * h) / h : 0.0;
        const double w_right = i < cells ? lambda * std::sinh((i + 0.5) * h) / h : 0.0;
        pc.mass.push_back(xb - xa);
        pc.diag.push_back(-(w_left + w_right) + k2 * (xb * xb * xb - xa * xa * xa) / 3.0);
        if (i < cells) pc.off.push_back(w_right);
    }
    return g;
}

// Phase of the kept member at X: the truncation point is moved to where |S| (or |C|) peaks
// for the window centre, so the Robin coefficient stays finite across the window.
double place_truncation(double lambda, Parity parity, double mu_c, double X0) {
    const double k = 2.0 * pi * lambda;
    double X = X0;
    for (int it = 0; it < 4; ++it) {
        auto [xi, dxi] = outgoing_solution(lambda, mu_c, X);
        // xi = |.| e^{-i phi}: S ~ sin(phi), C ~ cos(phi).
        const double phi = -std::arg(xi);
        const double target_offset = parity == Parity::even ? 0.5 * pi : 0.0;
        double shift = std::fmod(target_offset - phi, pi);
        if (shift < 0.0) shift += pi;
        if (it == 0 || std::abs(shift) < 0.5 * pi)
            X += shift / k;
        else
            X += (shift - pi) / k;
    }
    return X;
}

struct OuterWindow {
    double lo, hi, X;
};

OuterWindow outer_window(double lambda, Parity parity, double hi) {
    const double c4 = 4.0 * pi * pi * std::pow(lambda, 4);
    double W = 50.0;
    double X = 0.0;
    for (int it = 0; it < 4; ++it) {
        const double mu_c = hi - W;
        const double X0 = std::max(10.0 / lambda, std::abs(mu_c - c4) / (8.0 * pi * lambda));
        X = place_truncation(lambda, parity, mu_c, X0);
        W = 0.9 * pi * pi * lambda * X;
    }
    return {hi - 2.0 * W, hi, X};
}

// Eigenvalues of the outer discretization in (lo, hi], in decreasing order.
std::vector<double> outer_window_eigenvalues(double lambda, Parity parity, const OuterWindow& win,
                                             int per_wavelength) {
    const OuterGrid g = outer_grid(lambda, win.X, per_wavelength);
    auto count = [&](double mu) {
        const double r = robin_coefficient(lambda, parity, mu, g.X);
        return negative_count(g.pencil, mu, g.p_end * r);
    };
    const int base = count(win.lo);
    const int n = count(win.hi) - base;
    if (n < 0) throw NumericError("oracle: non-monotone count on an outer window");
    std::vector<double> out;
    for (int j = n; j >= 1; --j) {
        double lo = win.lo, hi = win.hi;
        for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)) + 1e-300; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (count(mid) - base >= j)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

struct OracleValue {
    double mu;
    double correction; // Richardson correction size, 0 without extrapolation
};

// Windows are solved on a range extended by a tenth of their width on the low side (and
// on the high side except at mu = 0), and the (extrapolated) values are then assigned
// to the window that contains them. Each window has its own truncation point, so a
// discrete eigenvalue close to a boundary can otherwise fall outside both neighbours.
std::vector<OracleValue> outer_eigenvalues(double lambda, Parity parity, int per_wavelength, int count,
                                           bool extrapolate) {
    std::vector<OracleValue> out;
    double hi = 0.0;
    for (int w = 0; static_cast<int>(out.size()) < count; ++w) {
        if (w > 200) throw NumericError("oracle: too many outer windows");
        const OuterWindow win = outer_window(lambda, parity, hi);
        const double margin = 0.1 * (win.hi - win.lo);
        OuterWindow ext = win;
        ext.lo -= margin;
        if (win.hi < 0.0) ext.hi += margin;
        const auto coarse = outer_window_eigenvalues(lambda, parity, ext, per_wavelength);
        std::vector<double> fine;
        if (extrapolate) fine = outer_window_eigenvalues(lambda, parity, ext, 2 * per_wavelength);
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            OracleValue v{coarse[i], 0.0};
            if (extrapolate) {
                // Pair with the nearest fine-grid value; the two lists can differ at the ends.
                auto near = std::min_element(fine.begin(), fine.end(), [&](double a, double b) {
                    return std::abs(a - coarse[i]) < std::abs(b - coarse[i]);
                });
                if (near == fine.end()) continue;
                v.mu = (4.0 * *near - coarse[i]) / 3.0;
                v.correction = std::abs(*near - coarse[i]) / 3.0;
            }
            if (v.mu > win.hi || v.mu <= win.lo) continue;
            if (!out.empty() && std::abs(out.back().mu - v.mu) <= 1e-6 * std::max(1.0, std::abs(v.mu))) continue;
            out.push_back(v);
        }
        hi = win.lo;
    }
    return out;
}

std::vector<EigenvalueRecord> to_records(const std::vector<OracleValue>& values, Method method) {
    std::vector<EigenvalueRecord> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        EigenvalueRecord r;
        r.index = static_cast<int>(i);
        r.method = method;
        r.mu = values[i].mu;
        r.residual = values[i].correction;
        out.push_back(r);
    }
    return out;
}

void check_oracle_args(const ProlateProblem& problem, int grid_size, int count) {
    problem.validate();
    if (grid_size < 50) throw DomainError("oracle_matrix_spectrum: grid_size must be at least 50");
    if (count < 1) throw DomainError("oracle_matrix_spectrum: count must be at least 1");
}

} // namespace

std::vector<EigenvalueRecord> oracle_matrix_spectrum_raw(const ProlateProblem& problem, int grid_size,
                                                         int count) {
    check_oracle_args(problem, grid_size, count);
    std::vector<OracleValue> values;
    if (problem.region == Region::inner) {
        for (double mu : inner_eigenvalues(problem.lambda, problem.parity, grid_size, count))
            values.push_back({mu, 0.0});
    } else {
        values = outer_eigenvalues(problem.lambda, problem.parity, grid_size, count, false);
    }
    values.resize(count);
    return to_records(values, Method::oracle);
}

std::vector<EigenvalueRecord> oracle_matrix_spectrum(const ProlateProblem& problem, int grid_size,
                                                     int count) {
    check_oracle_args(problem, grid_size, count);
    std::vector<OracleValue> values;
    if (problem.region == Region::inner) {
        const auto coarse = inner_eigenvalues(problem.lambda, problem.parity, grid_size, count);
        const auto fine = inner_eigenvalues(problem.lambda, problem.parity, 2 * grid_size, count);
        for (int i = 0; i < count; ++i)
            values.push_back({(4.0 * fine[i] - coarse[i]) / 3.0, std::abs(fine[i] - coarse[i]) / 3.0});
    } else {
        values = outer_eigenvalues(problem.lambda, problem.parity, grid_size, count, true);
    }
    values.resize(count);
    return to_records(values, Method::oracle);
}

} // namespace prolate
