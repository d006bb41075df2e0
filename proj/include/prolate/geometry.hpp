#ifndef PROLATE_GEOMETRY_HPP
#define PROLATE_GEOMETRY_HPP

#include <string>
#include <utility>
#include <vector>

namespace prolate {

/// alpha(x) = -4 (x^2 - 2); vanishes on the horizons x = +-sqrt 2.
double metric_alpha(double x);

/// Coefficient of dv^2 in ds^2 = 4 (x^2 - 2) dv^2 - 2 dv dx.
double metric_alpha_transformed(double x);

/// Horizon positions -sqrt 2 and sqrt 2.
std::pair<double, double> horizons();

/// t(x) = log|(sqrt 2 + x) / (x - sqrt 2)| / (8 sqrt 2) + c, so that dt/dx = 1 / alpha.
double null_t(double x, double c = 0.0);
/// v(x) = log|(x - sqrt 2) / (x + sqrt 2)| / (4 sqrt 2) + c, so that dv/dx = 1 / (2 (x^2 - 2)).
double null_v(double x, double c = 0.0);

double null_t_derivative(double x);
double null_v_derivative(double x);

struct XRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct CurveSamples {
    enum class Kind { t_of_x, v_of_x, horizontal };
    Kind kind = Kind::t_of_x;
    double c = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// t(x) and v(x) on `samples` equally spaced points of [lo, hi]. Throws DomainError when the
/// closed range contains a horizon, when lo >= hi, or when samples < 2.
std::pair<CurveSamples, CurveSamples> null_curves(double c, XRange range, int samples);

/// The rays v = v0, sampled on the same kind of grid.
CurveSamples horizontal_ray(double v0, XRange range, int samples);

/// CSV with columns x, t, v at 17 significant digits. Both curves must share their x values.
std::string curves_to_csv(const std::pair<CurveSamples, CurveSamples>& curves);

} // namespace prolate

#endif
