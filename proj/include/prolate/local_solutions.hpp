#ifndef PROLATE_LOCAL_SOLUTIONS_HPP
#define PROLATE_LOCAL_SOLUTIONS_HPP

#include "prolate/numkit/ode.hpp"
#include "prolate/numkit/tolerances.hpp"

#include <complex>
#include <numbers>
#include <vector>

namespace prolate {

/// Coefficients of  W xi = -((lambda^2 - x^2) xi')' + (2 pi lambda x)^2 xi.
struct ProlateCoefficients {
    double lambda = 1.0;

    double p(double x) const { return lambda * lambda - x * x; }
    double dp(double x) const { return -2.0 * x; }
    double q(double x) const {
        const double s = 2.0 * std::numbers::pi * lambda * x;
        return s * s;
    }
};

/// Regular solution at x = lambda: f(x) = sum_n U_n (x - lambda)^n, U_0 = 1.
struct FrobeniusSeries {
    double lambda = 1.0;
    double mu = 0.0;
    std::vector<double> coeffs;
    /// Evaluation window |x - lambda| < radius_hint (the series itself converges for |x - lambda| < 2 lambda).
    double radius_hint = 0.5;
};

/// U_0..U_N from the four-term recurrence obtained by substituting the series
/// into (W - mu) f = 0 around x = lambda.
FrobeniusSeries frobenius_coeffs(double lambda, double mu, int N);

/// (f(x), f'(x)) from the stored coefficients. Throws RangeError outside the window.
OdeState eval_regular_solution(const FrobeniusSeries& series, double x);

/// Regular solution at x with as many terms as the tolerance needs (at most
/// max_order); x must satisfy |x - lambda| <= lambda / 2.
OdeState regular_solution(double lambda, double mu, double x, const Tolerances& tol = {},
                          int max_order = 400);

/// Optimally truncated expansion at infinity, evaluated at one point x.
///
/// With k = 2 pi lambda and v(x) = sum_n n! U_n(mu) (2 pi i x)^{-n}, the complex
/// solution h(x) = i e^{-i k x} v(x) / x splits into the real solutions
/// S = Re h  (S ~ sin(kx)/x)  and  C = Im h  (C ~ cos(kx)/x).
struct AsymptoticBasis {
    double lambda = 1.0;
    double mu = 0.0;
    double x = 0.0;
    /// Terms n! U_n (2 pi i x)^{-n} of v(x) up to the truncation order.
    std::vector<std::complex<double>> v_coeffs;
    int truncation_order = 0;
    /// Size of the first omitted term plus the summation rounding.
    double error_estimate = 0.0;
    std::complex<double> v{1.0, 0.0};
    std::complex<double> dv{0.0, 0.0};
    double S = 0.0, dS = 0.0, C = 0.0, dC = 0.0;
};

/// Throws AccuracyError (suggesting a larger x) when the smallest term still
/// exceeds tol.abs_tol + tol.rel_tol |v|.
AsymptoticBasis asymptotic_basis(double lambda, double mu, double x, const Tolerances& tol = {});

/// Knobs shared by every routine that continues the regular solution away from x = lambda.
struct ShootingOptions {
    /// The integration starts at lambda +- delta_factor * lambda.
    double delta_factor = 1e-3;
    int frobenius_order = 30;
    /// Multiplies the default matching abscissa.
    double match_scale = 1.0;
    /// Smallest admissible value of 2 pi lambda x at the matching window.
    double min_match_phase = 40.0;
    Tolerances tol{1e-11, 1e-11, 2000000};
};

/// Default left end of the outer matching window: large enough for the
/// asymptotic series to be accurate and past its hump in n.
double default_match_point(double lambda, double mu, const ShootingOptions& options = {});

/// Coefficients of f_mu = a S + b C on the outer half line.
struct OuterConnection {
    double a = 0.0;
    double b = 0.0;
    double x_match = 0.0;
    /// Relative least-squares defect of the fit.
    double fit_residual = 0.0;
};

/// Continues f_mu from lambda + delta to the matching window and fits it onto
/// (S, C) by least squares over 8 points spread over one period, using values
/// and derivatives. When `dense` is non-null it receives the trajectory (with
/// dense output) from lambda + delta to the end of the window.
OuterConnection connect_to_infinity(double lambda, double mu, const ShootingOptions& options = {},
                                    OdeTrajectory* dense = nullptr);

/// Value of the Fourier integral  int_lambda^infty e^{-2 pi i x y} f_mu(y) dy  together with
/// an error estimate.
struct BorelFourierValue {
    std::complex<double> value;
    double error = 0.0;
    double x_cut = 0.0;
};

/// Quadrature of the dense ODE continuation over [lambda, X_cut] plus the
/// asymptotic tail past X_cut. For x > 0 this equals e^{-2 pi i lambda x} v(x) / (2 pi i x).
/// Throws AccuracyError when the tail series cannot be controlled (|x| too
/// close to lambda for the chosen cut) and DomainError for x = 0.
BorelFourierValue borel_fourier_eval(double lambda, double mu, double x,
                                     const ShootingOptions& options = {});

} // namespace prolate

#endif
