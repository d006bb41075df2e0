#ifndef PROLATE_NUMKIT_QUADRATURE_HPP
#define PROLATE_NUMKIT_QUADRATURE_HPP

#include "prolate/numkit/tolerances.hpp"

#include <complex>
#include <functional>

namespace prolate {

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// `b` may be +infinity; the half line is mapped onto [0, 1) by
/// x = a + t / (1 - t), which suits integrands with algebraic or exponential
/// decay. Oscillatory tails with slowly decaying envelopes should be cut at a
/// finite point by the caller and completed with an analytic tail.
///
/// Throws AccuracyError (carrying the best estimate and its error bound) when
/// tol.max_steps subdivisions do not reach max(abs_tol, rel_tol * |I|).
QuadResult<double> quad_adaptive_detailed(const std::function<double(double)>& f, double a,
                                          double b, const Tolerances& tol);
QuadResult<std::complex<double>> quad_adaptive_complex_detailed(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const Tolerances& tol);

double quad_adaptive(const std::function<double(double)>& f, double a, double b,
                     const Tolerances& tol);
std::complex<double> quad_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, const Tolerances& tol);

} // namespace prolate

#endif
