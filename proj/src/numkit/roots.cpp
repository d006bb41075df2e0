#include "prolate/numkit/roots.hpp"

#include "prolate/errors.hpp"

#include <cmath>
#include <string>

namespace prolate {

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  const Tolerances& tol) {
    return brent_root(f, lo, hi, f(lo), f(hi), tol);
}

double brent_root(const std::function<double(double)>& f, double lo, double hi, double f_lo,
                  double f_hi, const Tolerances& tol) {
    tol.validate();
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0) || std::isnan(f_lo) || std::isnan(f_hi))
        throw BracketError("brent_root: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");

    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < tol.max_steps; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double t = 2.0 * 1e-16 * std::abs(b) + 0.5 * (tol.abs_tol + tol.rel_tol * std::abs(b));
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= t || fb == 0.0) return b;

        if (std::abs(e) >= t && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * mid * s;
                q = 1.0 - s;
            } else {
                double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * mid * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < std::min(3.0 * mid * q - std::abs(t * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > t ? d : (mid > 0.0 ? t : -t);
        fb = f(b);
        if (std::isnan(fb)) throw NumericError("brent_root: function returned NaN");
    }
    throw AccuracyError("brent_root: iteration budget exhausted", b, std::abs(c - b));
}

} // namespace prolate
