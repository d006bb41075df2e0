#ifndef PROLATE_NUMKIT_ELLIPTIC_HPP
#define PROLATE_NUMKIT_ELLIPTIC_HPP

namespace prolate {

// Complete elliptic integrals in the parameter convention m (not the modulus k):
//   K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt,  E(m) = int_0^{pi/2} (1 - m sin^2 t)^{1/2} dt.
// Both are evaluated by the arithmetic-geometric mean and accept any m < 1
// (resp. m <= 1), including large negative m.

/// Throws DomainError for m >= 1 (logarithmic divergence at m = 1).
double elliptic_K(double m);

/// Throws DomainError for m > 1. E(1) = 1.
double elliptic_E(double m);

} // namespace prolate

#endif
