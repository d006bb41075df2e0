#include "prolate/numkit/ode.hpp"

namespace prolate {

OdeState OdeTrajectory::at(double x) const {
    if (knots_.size() < 2) throw RangeError("OdeTrajectory::at: no dense output recorded");
    const bool forward = knots_.back().x > knots_.front().x;
    const double lo = forward ? knots_.front().x : knots_.back().x;
    const double hi = forward ? knots_.back().x : knots_.front().x;
    if (!(x >= lo && x <= hi)) throw RangeError("OdeTrajectory::at: x outside the integrated range");

    // Index of the step [k, k+1] containing x.
    auto it = forward ? std::upper_bound(knots_.begin(), knots_.end(), x,
                                         [](double v, const Knot& k) { return v < k.x; })
                      : std::upper_bound(knots_.begin(), knots_.end(), x,
                                         [](double v, const Knot& k) { return v > k.x; });
    std::size_t k = static_cast<std::size_t>(it - knots_.begin());
    k = std::clamp<std::size_t>(k, 1, knots_.size() - 1) - 1;
    const Knot& a = knots_[k];
    const Knot& b = knots_[k + 1];

    const double h = b.x - a.x;
    const double s = (x - a.x) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    // Quintic Hermite basis on [0, 1] for (y, y', y'') at both ends.
    const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    const double h3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    const double h5 = 0.5 * (s3 - 2.0 * s4 + s5);
    const double d0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    const double d1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    const double d2 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
    const double d3 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
    const double d4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    const double d5 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);

    OdeState out;
    out.x = x;
    out.value = h0 * a.y + h * h1 * a.dy + h * h * h2 * a.ddy + h3 * b.y + h * h4 * b.dy +
                h * h * h5 * b.ddy;
    out.derivative = (d0 * a.y + d3 * b.y) / h + d1 * a.dy + d4 * b.dy + h * (d2 * a.ddy + d5 * b.ddy);
    return out;
}

OdeTrajectory integrate_ode(const std::function<double(double)>& p,
                            const std::function<double(double)>& dp,
                            const std::function<double(double)>& q_eff, double mu,
                            const OdeState& init, double to, const Tolerances& tol,
                            const OdeOptions& options) {
    FunctionCoefficients eq{p, dp, q_eff};
    return integrate_ode(eq, mu, init, to, tol, options);
}

} // namespace prolate
