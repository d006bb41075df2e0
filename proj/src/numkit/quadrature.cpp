#include "prolate/numkit/quadrature.hpp"

#include "prolate/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace prolate {

namespace {

// Kronrod 15-point abscissae and weights; the Gauss 7-point rule uses the odd nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<T, 15> fv;
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * xgk[j]);
        fv[14 - j] = f(c + h * xgk[j]);
    }
    T kronrod = fv[7] * wgk[7];
    T gauss = fv[7] * wg[3];
    double resabs = std::abs(fv[7]) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        kronrod += (fv[j] + fv[14 - j]) * wgk[j];
        resabs += (std::abs(fv[j]) + std::abs(fv[14 - j])) * wgk[j];
        if (j % 2 == 1) gauss += (fv[j] + fv[14 - j]) * wg[j / 2];
    }
    const T mean = kronrod * 0.5;
    double resasc = std::abs(fv[7] - mean) * wgk[7];
    for (int j = 0; j < 7; ++j)
        resasc += (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean)) * wgk[j];
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(h * (kronrod - gauss));
    // QUADPACK error sharpening and roundoff floor.
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, h * kronrod, err};
}

template <class T, class F>
QuadResult<T> adaptive(const F& f, double a, double b, const Tolerances& tol) {
    tol.validate();
    if (std::isnan(a) || std::isnan(b)) throw DomainError("quad_adaptive: NaN limit");
    if (a == b) return {};
    if (std::isinf(a)) throw DomainError("quad_adaptive: lower limit must be finite");
    if (b < a) {
        auto r = adaptive<T>(f, b, a, tol);
        r.value = -r.value;
        return r;
    }

    std::function<T(double)> g;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double t) -> T {
            if (t >= 1.0) return T{};
            const double s = 1.0 - t;
            T v = f(a + t / s);
            return v / (s * s);
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        g = [&f](double x) -> T { return f(x); };
    }

    std::priority_queue<Segment<T>> heap;
    Segment<T> first = gk15<T>(g, lo, hi);
    T total = first.value;
    double total_err = first.error;
    heap.push(first);
    int intervals = 1;
    const double min_width = 1e-14 * (hi - lo);

    while (true) {
        if (!std::isfinite(std::abs(total)))
            throw AccuracyError("quad_adaptive: non-finite integrand", std::abs(total), total_err);
        const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
        if (total_err <= target) break;
        if (intervals >= tol.max_steps)
            throw AccuracyError("quad_adaptive: subdivision budget exhausted", std::abs(total),
                                total_err);
        Segment<T> worst = heap.top();
        if (worst.b - worst.a < min_width) {
            // Cannot split any further; accept only if the remaining error is roundoff-sized.
            throw AccuracyError("quad_adaptive: interval too small to subdivide", std::abs(total),
                                total_err);
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment<T> left = gk15<T>(g, worst.a, mid);
        Segment<T> right = gk15<T>(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    // Recompute sums from the leaves to shed accumulated cancellation.
    T sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {sum, err, intervals};
}

} // namespace

QuadResult<double> quad_adaptive_detailed(const std::function<double(double)>& f, double a,
                                          double b, const Tolerances& tol) {
    return adaptive<double>(f, a, b, tol);
}

QuadResult<std::complex<double>> quad_adaptive_complex_detailed(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const Tolerances& tol) {
    return adaptive<std::complex<double>>(f, a, b, tol);
}

double quad_adaptive(const std::function<double(double)>& f, double a, double b,
                     const Tolerances& tol) {
    return adaptive<double>(f, a, b, tol).value;
}

std::complex<double> quad_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, const Tolerances& tol) {
    return adaptive<std::complex<double>>(f, a, b, tol).value;
}

} // namespace prolate
