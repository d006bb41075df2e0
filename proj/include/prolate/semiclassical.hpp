#ifndef PROLATE_SEMICLASSICAL_HPP
#define PROLATE_SEMICLASSICAL_HPP

#include "prolate/numkit/tolerances.hpp"

namespace prolate {

/// I(a) = a K(1 - a) - E(1 - a) + 1, the area function at lambda = 1. Throws DomainError for a <= 0.
double I_of_a(double a);

/// The same area by quadrature of int_1^inf (sqrt(a + y^2 - 1) / sqrt(y^2 - 1) - 1) dy
/// after y = cosh(u). Throws AccuracyError if the quadrature does not converge.
double I_direct(double a, const Tolerances& tol = {});

/// I_lambda(a) = lambda^2 I(a / lambda^4).
double I_lambda(double lambda, double a);

/// I_lambda(a) by quadrature of its defining integral over [lambda, inf), x = lambda cosh(u).
double I_lambda_direct(double lambda, double a, const Tolerances& tol = {});

/// Leading terms 1/2 sqrt(a) (log a - 2 + 4 log 2) + 1 of I(a) for large a.
double I_asymptotic(double a);

/// Next term -(log a + 4 log 2) / (8 sqrt a) of the large-a expansion of I(a).
double I_asymptotic_correction(double a);

struct SigmaValue {
    double exact = 0.0;      // I_lambda((E / 2 pi)^2 + lambda^4)
    double asymptotic = 0.0; // (E/2pi)(log(E/2pi) - 1 + log 4 - 2 log lambda) + lambda^2
};

/// Phase space area sigma(E, lambda) of {q, p >= lambda, H <= (E / 2 pi)^2 + lambda^4},
/// H = (p^2 - lambda^2)(q^2 - lambda^2). Twice this approximates the number of negative
/// outer eigenvalues mu >= -E^2 of either parity.
SigmaValue sigma(double E, double lambda);

struct CountEstimate {
    double E = 0.0;
    double lambda = 0.0;
    double a = 0.0;
    double I_value = 0.0;
    double sigma_asymptotic = 0.0;
    /// 2 sigma exact: expected number of negative eigenvalues with |mu| <= E^2 per parity.
    double predicted_count = 0.0;
};

CountEstimate count_estimate(double E, double lambda);

/// 2 sigma(E / 2, sqrt 2), exact form: semiclassical count of Dirac eigenvalues with
/// imaginary part in (0, E].
double predicted_dirac_count(double E);

/// Asymptotic form of the same count, (E / 2 pi)(log(E / 2 pi) - 1) + 4.
double predicted_dirac_count_asymptotic(double E);

/// Area of the region by a second quadrature route: the square [lambda, q*]^2 plus the two
/// symmetric arms beyond the diagonal point q*, integrated in q. Independent of I_of_a.
double area_omega(double lambda, double E, const Tolerances& tol = {});

} // namespace prolate

#endif
