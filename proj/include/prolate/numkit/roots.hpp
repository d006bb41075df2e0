#ifndef PROLATE_NUMKIT_ROOTS_HPP
#define PROLATE_NUMKIT_ROOTS_HPP

#include "prolate/numkit/tolerances.hpp"

#include <functional>

namespace prolate {

/// Brent's method on a sign-changing bracket [lo, hi].
/// The returned root is located to abs_tol + rel_tol * |x|.
/// Throws BracketError when f(lo) and f(hi) have the same strict sign.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  const Tolerances& tol);

/// Same as brent_root, reusing already known end-point values.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double f_lo,
                  double f_hi, const Tolerances& tol);

} // namespace prolate

#endif
