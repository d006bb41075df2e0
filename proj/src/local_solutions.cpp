#include "prolate/local_solutions.hpp"

#include "prolate/errors.hpp"
#include "prolate/numkit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace prolate {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

// i^{-n}
cplx inv_i_power(int n) {
    switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

struct WindowFit {
    double a, b, residual;
};

// Least-squares fit f = a S + b C over the window samples (values and scaled derivatives).
WindowFit fit_window(double lambda, double mu, const std::vector<OdeState>& samples,
                     const Tolerances& tol) {
    const double k = 2.0 * pi * lambda;
    double sss = 0.0, ssc = 0.0, scc = 0.0, sfs = 0.0, sfc = 0.0, sff = 0.0;
    std::vector<std::array<double, 6>> rows;
    for (const OdeState& s : samples) {
        AsymptoticBasis basis = asymptotic_basis(lambda, mu, s.x, tol);
        rows.push_back({basis.S, basis.C, s.value, basis.dS / k, basis.dC / k, s.derivative / k});
    }
    for (const auto& r : rows) {
        for (int o : {0, 3}) {
            sss += r[o] * r[o];
            ssc += r[o] * r[o + 1];
            scc += r[o + 1] * r[o + 1];
            sfs += r[o + 2] * r[o];
            sfc += r[o + 2] * r[o + 1];
            sff += r[o + 2] * r[o + 2];
        }
    }
    const double det = sss * scc - ssc * ssc;
    if (!(det > 0.0)) throw NumericError("asymptotic basis is degenerate on the matching window");
    const double a = (sfs * scc - sfc * ssc) / det;
    const double b = (sfc * sss - sfs * ssc) / det;
    double res = 0.0;
    for (const auto& r : rows) {
        for (int o : {0, 3}) {
            const double d = a * r[o] + b * r[o + 1] - r[o + 2];
            res += d * d;
        }
    }
    return {a, b, sff > 0.0 ? std::sqrt(res / sff) : 0.0};
}

std::vector<double> window_points(double lambda, double x_match) {
    std::vector<double> pts(8);
    for (int j = 0; j < 8; ++j) pts[j] = x_match + j / (8.0 * lambda);
    return pts;
}

} // namespace

FrobeniusSeries frobenius_coeffs(double lambda, double mu, int N) {
    check_lambda(lambda);
    if (N < 0) throw DomainError("frobenius_coeffs: N must be non-negative");
    const double l2 = lambda * lambda;
    const double c0 = 4.0 * pi * pi * l2 * l2 - mu;
    const double c1 = 8.0 * pi * pi * l2 * lambda;
    const double c2 = 4.0 * pi * pi * l2;

    FrobeniusSeries s;
    s.lambda = lambda;
    s.mu = mu;
    s.radius_hint = 0.5 * lambda;
    s.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    s.coeffs[0] = 1.0;
    for (int n = 0; n < N; ++n) {
        const double un = s.coeffs[n];
        const double un1 = n >= 1 ? s.coeffs[n - 1] : 0.0;
        const double un2 = n >= 2 ? s.coeffs[n - 2] : 0.0;
        const double m = n + 1.0;
        s.coeffs[n + 1] = -((n * (n + 1.0) + c0) * un + c1 * un1 + c2 * un2) / (2.0 * lambda * m * m);
    }
    return s;
}

OdeState eval_regular_solution(const FrobeniusSeries& series, double x) {
    const double t = x - series.lambda;
    if (!(std::abs(t) <= series.radius_hint))
        throw RangeError("eval_regular_solution: x = " + std::to_string(x) +
                         " outside the series window");
    double value = 0.0, deriv = 0.0;
    const auto& u = series.coeffs;
    for (std::size_t n = u.size(); n-- > 0;) {
        value = value * t + u[n];
        if (n >= 1) deriv = deriv * t + static_cast<double>(n) * u[n];
    }
    return {x, value, deriv};
}

OdeState regular_solution(double lambda, double mu, double x, const Tolerances& tol, int max_order) {
    check_lambda(lambda);
    const double t = x - lambda;
    if (!(std::abs(t) <= 0.5 * lambda))
        throw RangeError("regular_solution: x = " + std::to_string(x) + " outside the series window");
    FrobeniusSeries s = frobenius_coeffs(lambda, mu, max_order);
    double value = 0.0, deriv = 0.0, tn = 1.0, tn1 = 0.0;
    int small_run = 0;
    for (int n = 0; n <= max_order; ++n) {
        const double term = s.coeffs[n] * tn;
        const double dterm = n * s.coeffs[n] * tn1;
        value += term;
        deriv += dterm;
        const double scale = tol.abs_tol + tol.rel_tol * std::abs(value);
        const double dscale = tol.abs_tol + tol.rel_tol * std::abs(deriv);
        small_run = (std::abs(term) <= 1e-3 * scale && std::abs(dterm) <= 1e-3 * dscale) ? small_run + 1 : 0;
        if (small_run >= 4) return {x, value, deriv};
        tn1 = tn;
        tn *= t;
    }
    throw AccuracyError("regular_solution: series did not converge to tolerance", value, 0.0);
}

AsymptoticBasis asymptotic_basis(double lambda, double mu, double x, const Tolerances& tol) {
    check_lambda(lambda);
    if (!(x > lambda)) throw RangeError("asymptotic_basis: requires x > lambda");
    const double l2 = lambda * lambda;
    const double c0 = 4.0 * pi * pi * l2 * l2 - mu;
    const double c1 = 8.0 * pi * pi * l2 * lambda;
    const double c2 = 4.0 * pi * pi * l2;
    const double r = 1.0 / (2.0 * pi * x);
    const double k = 2.0 * pi * lambda;

    // V_n = n! U_n / (2 pi x)^n, so that the n-th term of v is V_n i^{-n}.
    const int n_cap = static_cast<int>(std::min(4.0 * pi * lambda * x + 10.0, 20000.0));
    std::vector<double> V{1.0};
    V.reserve(n_cap + 2);
    int best = 1;
    double best_mag = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_cap; ++n) {
        const double m = n + 1.0;
        const double vn1 = n >= 1 ? V[n - 1] : 0.0;
        const double vn2 = n >= 2 ? V[n - 2] : 0.0;
        const double next = -((n * m + c0) * V[n] * m * r + c1 * vn1 * m * n * r * r +
                              c2 * vn2 * m * n * (n - 1.0) * r * r * r) /
                            (2.0 * lambda * m * m);
        V.push_back(next);
        const double mag = std::abs(next);
        if (mag < best_mag) {
            best_mag = mag;
            best = n + 1;
        }
        if (!std::isfinite(next)) break;
    }

    AsymptoticBasis out;
    out.lambda = lambda;
    out.mu = mu;
    out.x = x;
    out.truncation_order = best;
    cplx v{0.0, 0.0}, dv{0.0, 0.0};
    double abs_sum = 0.0;
    for (int n = 0; n < best; ++n) {
        const cplx term = V[n] * inv_i_power(n);
        out.v_coeffs.push_back(term);
        v += term;
        dv += -static_cast<double>(n) * term / x;
        abs_sum += std::abs(V[n]);
    }
    out.error_estimate = best_mag + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    out.v = v;
    out.dv = dv;
    if (out.error_estimate > tol.abs_tol + tol.rel_tol * std::abs(v))
        throw AccuracyError("asymptotic_basis: expansion at x = " + std::to_string(x) +
                                " is not accurate enough for this mu; use a larger x",
                            std::abs(v), out.error_estimate);

    const cplx phase = std::exp(cplx(0.0, -k * x));
    const cplx I{0.0, 1.0};
    const cplx h = I * phase * v / x;
    const cplx dh = I * phase * (-I * k * v / x + dv / x - v / (x * x));
    out.S = h.real();
    out.C = h.imag();
    out.dS = dh.real();
    out.dC = dh.imag();
    return out;
}

double default_match_point(double lambda, double mu, const ShootingOptions& options) {
    check_lambda(lambda);
    const double l2 = lambda * lambda;
    const double hump = std::abs(mu - 4.0 * pi * pi * l2 * l2) / (16.0 * pi * lambda);
    return options.match_scale * std::max(options.min_match_phase / (2.0 * pi * lambda), hump);
}

OuterConnection connect_to_infinity(double lambda, double mu, const ShootingOptions& options,
                                    OdeTrajectory* dense) {
    check_lambda(lambda);
    const double delta = options.delta_factor * lambda;
    const FrobeniusSeries series = frobenius_coeffs(lambda, mu, options.frobenius_order);
    const OdeState init = eval_regular_solution(series, lambda + delta);

    const double x_match = std::max(default_match_point(lambda, mu, options), lambda + 2.0 * delta);
    OdeOptions ode;
    ode.sample_points = window_points(lambda, x_match);
    ode.dense = dense != nullptr;
    OdeTrajectory traj = integrate_ode(ProlateCoefficients{lambda}, mu, init,
                                       ode.sample_points.back(), options.tol, ode);
    const WindowFit fit = fit_window(lambda, mu, traj.samples, options.tol);
    if (dense) *dense = std::move(traj);
    return {fit.a, fit.b, x_match, fit.residual};
}

BorelFourierValue borel_fourier_eval(double lambda, double mu, double x,
                                     const ShootingOptions& options) {
    check_lambda(lambda);
    const double k = 2.0 * pi * lambda;
    const double omega = 2.0 * pi * x;
    const double w_plus = omega + k, w_minus = omega - k;
    const double w_min = std::min(std::abs(w_plus), std::abs(w_minus));
    if (!(w_min > 0.0))
        throw AccuracyError("borel_fourier_eval: the tail integral diverges at |x| = lambda", 0.0,
                            std::numeric_limits<double>::infinity());

    // The tail series in 1/(w X) needs w X well above the number of terms kept.
    const double x_cut = std::max(default_match_point(lambda, mu, options), 60.0 / w_min);
    if (x_cut > 1e4 / lambda)
        throw AccuracyError("borel_fourier_eval: x too close to lambda for a controlled tail", 0.0,
                            std::numeric_limits<double>::infinity());

    const double delta = options.delta_factor * lambda;
    const FrobeniusSeries series = frobenius_coeffs(lambda, mu, options.frobenius_order);
    const Tolerances& tol = options.tol;

    // [lambda, lambda + delta]: the series itself.
    cplx head = quad_adaptive_complex(
        [&](double y) { return std::exp(cplx(0.0, -omega * y)) * eval_regular_solution(series, y).value; },
        lambda, lambda + delta, tol);

    // [lambda + delta, x_cut]: integrate the Fourier integrand alongside the ODE.
    const ProlateCoefficients eq{lambda};
    auto rhs = [&](double y, const std::array<double, 4>& s, std::array<double, 4>& f) {
        f[0] = s[1];
        f[1] = ((eq.q(y) - mu) * s[0] - eq.dp(y) * s[1]) / eq.p(y);
        f[2] = std::cos(omega * y) * s[0];
        f[3] = -std::sin(omega * y) * s[0];
    };
    const std::vector<double> window = window_points(lambda, x_cut);
    std::vector<OdeState> samples(window.size());
    cplx body{0.0, 0.0};
    long acc = 0, rej = 0;
    const OdeState init = eval_regular_solution(series, lambda + delta);
    detail::dop853_integrate<4>(
        rhs, lambda + delta, {init.value, init.derivative, 0.0, 0.0}, window.back(), tol, window,
        std::numeric_limits<double>::infinity(), [](double, const auto&, const auto&) {},
        [&](std::size_t i, double y, const std::array<double, 4>& s) {
            samples[i] = OdeState{y, s[0], s[1]};
            if (i == 0) body = cplx(s[2], s[3]);
        },
        acc, rej);

    const WindowFit fit = fit_window(lambda, mu, samples, tol);

    // Tail: f = alpha h + conj(alpha) conj(h) with h = i e^{-iky} sum_n d_n y^{-n-1}.
    const cplx alpha(0.5 * fit.a, -0.5 * fit.b);
    const AsymptoticBasis basis = asymptotic_basis(lambda, mu, x_cut, tol);
    const cplx I{0.0, 1.0};
    double tail_err = 0.0;
    // J_m(w) = int_X^infty e^{-iwy} y^{-m} dy by its (optimally truncated) expansion in 1/(wX).
    double j_err = 0.0;
    auto J = [&](int m, double w) {
        const cplx iw = I * w;
        cplx term = std::exp(-iw * x_cut) / (iw * std::pow(x_cut, m));
        cplx sum = term;
        double last = std::abs(term);
        for (int j = 1; j < 400; ++j) {
            cplx next = -term * static_cast<double>(m + j - 1) / (iw * x_cut);
            if (std::abs(next) >= last) break;
            sum += next;
            term = next;
            last = std::abs(next);
            if (last <= 1e-17 * std::abs(sum)) break;
        }
        j_err = last;
        return sum;
    };
    cplx tail{0.0, 0.0};
    // basis.v_coeffs[n] = d_n X^{-n}, hence d_n = v_coeffs[n] X^n.
    for (std::size_t n = 0; n < basis.v_coeffs.size(); ++n) {
        const cplx dn_scaled = basis.v_coeffs[n];
        if (std::abs(dn_scaled) < 1e-18 * std::abs(basis.v)) break;
        const cplx dn = dn_scaled * std::pow(x_cut, static_cast<double>(n));
        const int m = static_cast<int>(n) + 1;
        const cplx jp = J(m, w_plus);
        double err = j_err;
        const cplx jm = J(m, w_minus);
        err += j_err;
        tail += alpha * I * dn * jp + std::conj(alpha) * (-I) * std::conj(dn) * jm;
        tail_err += std::abs(alpha) * std::abs(dn) * err;
    }

    BorelFourierValue out;
    out.value = head + body + tail;
    out.x_cut = x_cut;
    const double amp = std::hypot(fit.a, fit.b);
    out.error = tail_err + amp * basis.error_estimate / (x_cut * w_min) +
                fit.residual * amp / w_min + tol.abs_tol * (x_cut - lambda);
    return out;
}

} // namespace prolate
