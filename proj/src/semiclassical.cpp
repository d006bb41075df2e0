#include "prolate/semiclassical.hpp"

#include "prolate/errors.hpp"
#include "prolate/numkit/elliptic.hpp"
#include "prolate/numkit/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace prolate {

namespace {

using std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

// int_0^inf a / (sqrt(a + (c s)^2) + c s) du with s = sinh(u); the integrand is the
// rationalized form of sqrt(a + (c s)^2) - c s. It is flat up to c s ~ sqrt(a) and
// decays like e^{-u} afterwards, so the range is split there.
double cosh_substituted_integral(double a, double c, const Tolerances& tol) {
    auto f = [a, c](double u) {
        const double cs = c * std::sinh(u);
        if (!std::isfinite(cs)) return 0.0;
        return a / (std::sqrt(a + cs * cs) + cs);
    };
    const double knee = std::asinh(std::sqrt(a) / c) + 1.0;
    return quad_adaptive(f, 0.0, knee, tol) +
           quad_adaptive(f, knee, std::numeric_limits<double>::infinity(), tol);
}

} // namespace

double I_of_a(double a) {
    require_positive(a, "I_of_a: a");
    const double m = 1.0 - a;
    return a * elliptic_K(m) - elliptic_E(m) + 1.0;
}

double I_direct(double a, const Tolerances& tol) {
    require_positive(a, "I_direct: a");
    tol.validate();
    return cosh_substituted_integral(a, 1.0, tol);
}

double I_lambda(double lambda, double a) {
    require_positive(lambda, "I_lambda: lambda");
    require_positive(a, "I_lambda: a");
    return lambda * lambda * I_of_a(a / std::pow(lambda, 4));
}

double I_lambda_direct(double lambda, double a, const Tolerances& tol) {
    require_positive(lambda, "I_lambda_direct: lambda");
    require_positive(a, "I_lambda_direct: a");
    tol.validate();
    // x = lambda cosh(u): the integrand times dx is sqrt(a + lambda^4 sinh^2 u) - lambda^2 sinh u.
    return cosh_substituted_integral(a, lambda * lambda, tol);
}

double I_asymptotic(double a) {
    require_positive(a, "I_asymptotic: a");
    return 0.5 * std::sqrt(a) * (std::log(a) - 2.0 + 4.0 * std::log(2.0)) + 1.0;
}

double I_asymptotic_correction(double a) {
    require_positive(a, "I_asymptotic_correction: a");
    return -(std::log(a) + 4.0 * std::log(2.0)) / (8.0 * std::sqrt(a));
}

SigmaValue sigma(double E, double lambda) {
    require_positive(E, "sigma: E");
    require_positive(lambda, "sigma: lambda");
    const double e = E / (2.0 * pi);
    const double a = e * e + std::pow(lambda, 4);
    SigmaValue s;
    s.exact = I_lambda(lambda, a);
    s.asymptotic = e * (std::log(e) - 1.0 + std::log(4.0) - 2.0 * std::log(lambda)) + lambda * lambda;
    return s;
}

CountEstimate count_estimate(double E, double lambda) {
    const SigmaValue s = sigma(E, lambda);
    CountEstimate c;
    c.E = E;
    c.lambda = lambda;
    c.a = std::pow(E / (2.0 * pi), 2) + std::pow(lambda, 4);
    c.I_value = s.exact;
    c.sigma_asymptotic = s.asymptotic;
    c.predicted_count = 2.0 * s.exact;
    return c;
}

double predicted_dirac_count(double E) {
    require_positive(E, "predicted_dirac_count: E");
    return 2.0 * sigma(0.5 * E, std::numbers::sqrt2).exact;
}

double predicted_dirac_count_asymptotic(double E) {
    require_positive(E, "predicted_dirac_count_asymptotic: E");
    const double e = E / (2.0 * pi);
    return e * (std::log(e) - 1.0) + 4.0;
}

double area_omega(double lambda, double E, const Tolerances& tol) {
    require_positive(lambda, "area_omega: lambda");
    require_positive(E, "area_omega: E");
    tol.validate();
    const double l2 = lambda * lambda;
    const double a = std::pow(E / (2.0 * pi), 2) + l2 * l2;
    // Diagonal corner: (q*^2 - lambda^2)^2 = a.
    const double q_star = std::sqrt(l2 + std::sqrt(a));
    // Height above p = lambda of the boundary p_max(q) = sqrt(lambda^2 + a / (q^2 - lambda^2)).
    auto arm = [=](double q) {
        const double g = a / ((q - lambda) * (q + lambda));
        if (!std::isfinite(g)) return 0.0;
        return g / (std::sqrt(l2 + g) + lambda);
    };
    // The arm decays like a / (2 lambda q^2); split once more at a few multiples of q*.
    const double mid = 4.0 * q_star;
    const double arms = quad_adaptive(arm, q_star, mid, tol) +
                        quad_adaptive(arm, mid, std::numeric_limits<double>::infinity(), tol);
    return (q_star - lambda) * (q_star - lambda) + 2.0 * arms;
}

} // namespace prolate
