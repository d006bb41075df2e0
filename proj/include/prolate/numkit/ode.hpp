#ifndef PROLATE_NUMKIT_ODE_HPP
#define PROLATE_NUMKIT_ODE_HPP

#include "prolate/errors.hpp"
#include "prolate/numkit/tolerances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace prolate {

/// A point of a solution of a second-order linear ODE: (x, y(x), y'(x)).
struct OdeState {
    double x = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

/// Coefficients of the Sturm-Liouville form  -(p y')' + q y = mu y.
template <class Eq>
concept SturmLiouvilleCoefficients = requires(const Eq& eq, double x) {
    { eq.p(x) } -> std::convertible_to<double>;
    { eq.dp(x) } -> std::convertible_to<double>;
    { eq.q(x) } -> std::convertible_to<double>;
};

/// Type-erased coefficients, for callers that build p and q at run time.
struct FunctionCoefficients {
    std::function<double(double)> p_fn;
    std::function<double(double)> dp_fn;
    std::function<double(double)> q_fn;

    double p(double x) const { return p_fn(x); }
    double dp(double x) const { return dp_fn(x); }
    double q(double x) const { return q_fn(x); }
};

struct OdeOptions {
    /// Points (between start and end, any order) where the state is reported
    /// exactly; the step control lands on each of them.
    std::vector<double> sample_points;
    /// Keep every accepted step for quintic Hermite dense output.
    bool dense = false;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Result of integrate_ode: end state, exact samples, and optional dense output.
class OdeTrajectory {
  public:
    OdeState final_state;
    /// States at OdeOptions::sample_points, in the order they were requested.
    std::vector<OdeState> samples;
    long accepted_steps = 0;
    long rejected_steps = 0;

    bool has_dense() const { return knots_.size() >= 2; }

    /// Quintic Hermite interpolation through the accepted steps (value and
    /// second derivative at both ends of the step). Throws RangeError outside
    /// the integrated range or when no dense output was requested.
    OdeState at(double x) const;

    double x_begin() const { return knots_.empty() ? final_state.x : knots_.front().x; }
    double x_end() const { return final_state.x; }

    void add_knot(double x, double y, double dy, double ddy) { knots_.push_back({x, y, dy, ddy}); }

  private:
    struct Knot {
        double x, y, dy, ddy;
    };
    std::vector<Knot> knots_;
};

namespace detail {

// Dormand-Prince 8(5,3) tableau (Hairer & Wanner, DOP853).
namespace dop853 {
inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;
inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;
inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;
inline constexpr double e31 = 0.244094488188976377952755905512e+00;
inline constexpr double e32 = 0.733846688281611857341361741547e+00;
inline constexpr double e33 = 0.220588235294117647058823529412e-01;
inline constexpr double e51 = 0.1312004499419488073250102996e-01;
inline constexpr double e56 = -0.1225156446376204440720569753e+01;
inline constexpr double e57 = -0.4957589496572501915214079952e+00;
inline constexpr double e58 = 0.1664377182454986536961530415e+01;
inline constexpr double e59 = -0.3503288487499736816886487290e+00;
inline constexpr double e510 = 0.3341791187130174790297318841e+00;
inline constexpr double e511 = 0.8192320648511571246570742613e-01;
inline constexpr double e512 = -0.2235530786388629525884427845e-01;
} // namespace dop853

/// Adaptive DOP853 integration of y' = rhs(x, y) for an N-component state.
///
/// `on_step(x, y, f)` is called at the start point and after every accepted
/// step; `on_sample(i, x, y)` when sample point i (index into `samples`) is hit.
template <std::size_t N, class Rhs, class OnStep, class OnSample>
std::array<double, N> dop853_integrate(Rhs&& rhs, double x0, std::array<double, N> y, double x_end,
                                       const Tolerances& tol, const std::vector<double>& samples,
                                       double max_step, OnStep&& on_step, OnSample&& on_sample,
                                       long& accepted, long& rejected) {
    using namespace dop853;
    using State = std::array<double, N>;
    tol.validate();

    const double dir = x_end >= x0 ? 1.0 : -1.0;
    const double span = std::abs(x_end - x0);
    const double uround = std::numeric_limits<double>::epsilon();
    max_step = std::min(max_step, span);

    // Sample points in integration order.
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dir * samples[a] < dir * samples[b]; });
    for (std::size_t i : order) {
        if (dir * (samples[i] - x0) < 0.0 || dir * (samples[i] - x_end) > 0.0)
            throw RangeError("sample point outside the integration interval");
    }
    std::size_t next_sample = 0;
    while (next_sample < order.size() && samples[order[next_sample]] == x0) {
        on_sample(order[next_sample], x0, y);
        ++next_sample;
    }

    State k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, yw, ynew;
    auto scale = [&](double a, double b) { return tol.abs_tol + tol.rel_tol * std::max(std::abs(a), std::abs(b)); };

    double x = x0;
    rhs(x, y, k1);
    on_step(x, y, k1);
    if (span == 0.0) return y;

    // Initial step guess (Hairer's hinit).
    double h;
    {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double sk = scale(y[i], y[i]);
            dnf += (k1[i] / sk) * (k1[i] / sk);
            dny += (y[i] / sk) * (y[i] / sk);
        }
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, max_step);
        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + dir * h * k1[i];
        rhs(x + dir * h, yw, k2);
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double sk = scale(y[i], y[i]);
            der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
        }
        der2 = std::sqrt(der2) / h;
        double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
        h = std::min({100.0 * h, h1, max_step});
    }

    // PI step-size controller.
    constexpr double beta = 0.04;
    constexpr double expo1 = 1.0 / 8.0 - beta * 0.2;
    constexpr double safe = 0.9, facmin = 1.0 / 3.0, facmax = 6.0;
    double err_old = 1e-4;
    bool last_rejected = false;
    long steps = 0;

    while (dir * (x_end - x) > 0.0) {
        if (++steps > tol.max_steps)
            throw IntegrationError("ODE step budget exhausted at x = " + std::to_string(x), x);
        if (h < 10.0 * uround * std::max(1.0, std::abs(x)))
            throw IntegrationError("ODE step size underflow at x = " + std::to_string(x), x);

        bool hits_sample = false;
        double target = x_end;
        if (next_sample < order.size()) target = samples[order[next_sample]];
        if (h >= std::abs(target - x) * (1.0 - 1e-12)) {
            h = std::abs(target - x);
            hits_sample = next_sample < order.size();
        }
        const double hs = dir * h;

        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + hs * a21 * k1[i];
        rhs(x + c2 * hs, yw, k2);
        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + c3 * hs, yw, k3);
        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + hs * (a41 * k1[i] + a43 * k3[i]);
        rhs(x + c4 * hs, yw, k4);
        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + hs * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(x + c5 * hs, yw, k5);
        for (std::size_t i = 0; i < N; ++i) yw[i] = y[i] + hs * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(x + c6 * hs, yw, k6);
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(x + c7 * hs, yw, k7);
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
        rhs(x + c8 * hs, yw, k8);
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                                 a98 * k8[i]);
        rhs(x + c9 * hs, yw, k9);
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                                 a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
        rhs(x + c10 * hs, yw, k10);
        // Stages 11 and 12 reuse k2 and k3.
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                                 a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
        rhs(x + c11 * hs, yw, k2);
        for (std::size_t i = 0; i < N; ++i)
            yw[i] = y[i] + hs * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                                 a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                                 a1211 * k2[i]);
        rhs(x + hs, yw, k3);

        double err5 = 0.0, err3 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double incr = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                          b10 * k10[i] + b11 * k2[i] + b12 * k3[i];
            ynew[i] = y[i] + hs * incr;
            double sk = scale(y[i], ynew[i]);
            double e3 = incr - e31 * k1[i] - e32 * k9[i] - e33 * k3[i];
            double e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] +
                        e510 * k10[i] + e511 * k2[i] + e512 * k3[i];
            err3 += (e3 / sk) * (e3 / sk);
            err5 += (e5 / sk) * (e5 / sk);
        }
        double deno = err5 + 0.01 * err3;
        double err = deno > 0.0 ? h * err5 * std::sqrt(1.0 / (static_cast<double>(N) * deno)) : 0.0;
        if (!std::isfinite(err)) err = 1e10;

        double fac11 = std::pow(err, expo1);
        double fac = fac11 / std::pow(err_old, beta);
        fac = std::clamp(fac / safe, 1.0 / facmax, 1.0 / facmin);
        double h_new = h / fac;

        if (err <= 1.0) {
            err_old = std::max(err, 1e-4);
            ++accepted;
            x = hits_sample ? samples[order[next_sample]] : x + hs;
            if (!hits_sample && dir * (x - x_end) > 0.0) x = x_end;
            y = ynew;
            rhs(x, y, k1);
            on_step(x, y, k1);
            while (next_sample < order.size() && dir * (samples[order[next_sample]] - x) <= 0.0) {
                on_sample(order[next_sample], x, y);
                ++next_sample;
            }
            if (last_rejected) h_new = std::min(h_new, h);
            last_rejected = false;
            h = std::min(h_new, max_step);
        } else {
            h = h / std::min(1.0 / facmin, fac11 / safe);
            last_rejected = true;
            ++rejected;
        }
    }
    return y;
}

} // namespace detail

/// Integrates  -(p y')' + q y = mu y  from init.x to `to` with DOP853 and PI
/// step control. The interval must not contain a zero of p.
template <SturmLiouvilleCoefficients Eq>
OdeTrajectory integrate_ode(const Eq& eq, double mu, const OdeState& init, double to,
                            const Tolerances& tol, const OdeOptions& options = {}) {
    if (!std::isfinite(init.x) || !std::isfinite(init.value) || !std::isfinite(init.derivative) ||
        !std::isfinite(to))
        throw DomainError("integrate_ode: non-finite initial data");

    auto rhs = [&](double x, const std::array<double, 2>& y, std::array<double, 2>& f) {
        const double p = eq.p(x);
        f[0] = y[1];
        f[1] = ((eq.q(x) - mu) * y[0] - eq.dp(x) * y[1]) / p;
    };

    OdeTrajectory traj;
    traj.samples.resize(options.sample_points.size());
    auto on_step = [&](double x, const std::array<double, 2>& y, const std::array<double, 2>& f) {
        if (options.dense) traj.add_knot(x, y[0], y[1], f[1]);
    };
    auto on_sample = [&](std::size_t i, double x, const std::array<double, 2>& y) {
        traj.samples[i] = OdeState{x, y[0], y[1]};
    };
    auto y = detail::dop853_integrate<2>(rhs, init.x, {init.value, init.derivative}, to, tol,
                                         options.sample_points, options.max_step, on_step,
                                         on_sample, traj.accepted_steps, traj.rejected_steps);
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
        throw IntegrationError("integrate_ode: solution overflowed", to);
    traj.final_state = OdeState{to, y[0], y[1]};
    return traj;
}

/// Convenience overload with run-time coefficient functions.
OdeTrajectory integrate_ode(const std::function<double(double)>& p,
                            const std::function<double(double)>& dp,
                            const std::function<double(double)>& q_eff, double mu,
                            const OdeState& init, double to, const Tolerances& tol,
                            const OdeOptions& options = {});

} // namespace prolate

#endif
