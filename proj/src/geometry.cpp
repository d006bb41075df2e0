#include "prolate/geometry.hpp"

#include "prolate/errors.hpp"
#include "prolate/zeta_compare.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace prolate {

namespace {

constexpr double root2 = std::numbers::sqrt2;

std::vector<double> checked_grid(XRange r, int samples) {
    if (!(r.lo < r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw DomainError("geometry: range must satisfy lo < hi");
    if (samples < 2) throw DomainError("geometry: need at least 2 samples");
    for (double h : {-root2, root2})
        if (r.lo <= h && h <= r.hi) throw DomainError("geometry: range touches the horizon at " + format_real(h));
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i) xs[i] = r.lo + (r.hi - r.lo) * i / (samples - 1.0);
    xs.back() = r.hi;
    return xs;
}

} // namespace

double metric_alpha(double x) { return -4.0 * (x * x - 2.0); }

double metric_alpha_transformed(double x) { return 4.0 * (x * x - 2.0); }

std::pair<double, double> horizons() { return {-root2, root2}; }

double null_t(double x, double c) {
    return std::log(std::abs((root2 + x) / (x - root2))) / (8.0 * root2) + c;
}

double null_v(double x, double c) {
    return std::log(std::abs((x - root2) / (x + root2))) / (4.0 * root2) + c;
}

double null_t_derivative(double x) { return 1.0 / metric_alpha(x); }

double null_v_derivative(double x) { return 1.0 / (2.0 * (x * x - 2.0)); }

std::pair<CurveSamples, CurveSamples> null_curves(double c, XRange range, int samples) {
    const auto xs = checked_grid(range, samples);
    CurveSamples t, v;
    t.kind = CurveSamples::Kind::t_of_x;
    v.kind = CurveSamples::Kind::v_of_x;
    t.c = v.c = c;
    for (double x : xs) {
        t.points.emplace_back(x, null_t(x, c));
        v.points.emplace_back(x, null_v(x, c));
    }
    return {t, v};
}

CurveSamples horizontal_ray(double v0, XRange range, int samples) {
    CurveSamples out;
    out.kind = CurveSamples::Kind::horizontal;
    out.c = v0;
    for (double x : checked_grid(range, samples)) out.points.emplace_back(x, v0);
    return out;
}

std::string curves_to_csv(const std::pair<CurveSamples, CurveSamples>& curves) {
    const auto& [t, v] = curves;
    if (t.points.size() != v.points.size()) throw DomainError("curves_to_csv: sample counts differ");
    std::ostringstream out;
    out << "x,t,v\n";
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        if (t.points[i].first != v.points[i].first) throw DomainError("curves_to_csv: x grids differ");
        out << format_real(t.points[i].first) << ',' << format_real(t.points[i].second) << ','
            << format_real(v.points[i].second) << '\n';
    }
    return out.str();
}

} // namespace prolate
