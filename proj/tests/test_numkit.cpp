#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "prolate/errors.hpp"
#include "prolate/numkit.hpp"

#include <cmath>
#include <numbers>

using namespace prolate;
using std::numbers::pi;

namespace {

double K_by_quadrature(double m) {
    Tolerances tol{1e-13, 1e-13, 100000};
    return quad_adaptive([m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                         0.0, pi / 2, tol);
}

double E_by_quadrature(double m) {
    Tolerances tol{1e-13, 1e-13, 100000};
    return quad_adaptive([m](double t) { return std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                         0.0, pi / 2, tol);
}

struct Harmonic {
    double p(double) const { return 1.0; }
    double dp(double) const { return 0.0; }
    double q(double) const { return 0.0; }
};

// -(x^2 y')' + x y = mu y  on [1, 3]: smooth, variable coefficients.
struct Variable {
    double p(double x) const { return x * x; }
    double dp(double x) const { return 2.0 * x; }
    double q(double x) const { return x; }
};

} // namespace

TEST_CASE("elliptic integrals at forced values") {
    CHECK(elliptic_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(elliptic_E(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(elliptic_E(1.0) == 1.0);
    CHECK_THROWS_AS(elliptic_K(1.0), DomainError);
    CHECK_THROWS_AS(elliptic_K(1.5), DomainError);
    CHECK_THROWS_AS(elliptic_E(1.0 + 1e-12), DomainError);
}

TEST_CASE("elliptic integrals agree with quadrature of their definitions") {
    // Frozen from the quadrature route: K(0.5) = 1.8540746773013719, E(0.5) = 1.3506438810476755.
    CHECK(std::abs(elliptic_K(0.5) - 1.8540746773013719) < 1e-14);
    CHECK(std::abs(elliptic_E(0.5) - 1.3506438810476755) < 1e-14);
    for (int i = 0; i <= 9; ++i) {
        const double m = 0.1 * i;
        CHECK(std::abs(elliptic_K(m) - K_by_quadrature(m)) < 1e-10);
        CHECK(std::abs(elliptic_E(m) - E_by_quadrature(m)) < 1e-10);
    }
    // Negative parameters occur as 1 - a for a > 1.
    for (double m : {-0.5, -10.0, -1e4}) {
        CHECK(elliptic_K(m) == doctest::Approx(K_by_quadrature(m)).epsilon(1e-12));
        CHECK(elliptic_E(m) == doctest::Approx(E_by_quadrature(m)).epsilon(1e-12));
    }
}

TEST_CASE("elliptic integrals are monotone") {
    double k_prev = elliptic_K(-5.0), e_prev = elliptic_E(-5.0);
    for (double m = -4.9; m < 0.99; m += 0.1) {
        CHECK(elliptic_K(m) > k_prev);
        CHECK(elliptic_E(m) < e_prev);
        k_prev = elliptic_K(m);
        e_prev = elliptic_E(m);
    }
}

TEST_CASE("quadrature basics") {
    Tolerances tol;
    CHECK(quad_adaptive([](double x) { return x * x; }, 0.0, 1.0, tol) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(quad_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, tol) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, INFINITY, tol) ==
          doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(quad_adaptive([](double x) { return x; }, 1.0, 0.0, tol) == doctest::Approx(-0.5));
    CHECK(quad_adaptive([](double) { return 1.0; }, 2.0, 2.0, tol) == 0.0);
    // Cross-check between the quadrature and AGM code paths.
    CHECK(std::abs(K_by_quadrature(0.5) - elliptic_K(0.5)) < 1e-12);
}

TEST_CASE("complex quadrature") {
    Tolerances tol;
    auto v = quad_adaptive_complex([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, pi, tol);
    CHECK(std::abs(v - std::complex<double>(0.0, 2.0)) < 1e-12);
}

TEST_CASE("quadrature reports failure with an estimate") {
    Tolerances tight{1e-15, 1e-15, 5};
    try {
        quad_adaptive([](double x) { return std::sin(50.0 * x); }, 0.0, 10.0, tight);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("brent root") {
    Tolerances tol;
    CHECK(brent_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, tol) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(brent_root([](double x) { return std::cos(x); }, 1.0, 2.0, tol) == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, tol), BracketError);
}

TEST_CASE("tolerance validation") {
    CHECK_THROWS_AS((Tolerances{0.0, 1e-8, 10}.validate()), DomainError);
    CHECK_THROWS_AS((Tolerances{1e-8, -1.0, 10}.validate()), DomainError);
    CHECK_THROWS_AS((Tolerances{1e-8, 1e-8, 0}.validate()), DomainError);
    Tolerances t = Tolerances{}.scaled(100.0);
    CHECK(t.abs_tol == doctest::Approx(1e-10));
}

TEST_CASE("harmonic oscillator") {
    Tolerances tol;
    auto traj = integrate_ode(Harmonic{}, 1.0, OdeState{0.0, 0.0, 1.0}, pi / 2, tol);
    CHECK(std::abs(traj.final_state.value - 1.0) < 1e-10);
    CHECK(std::abs(traj.final_state.derivative) < 1e-10);

    auto flat = integrate_ode(Harmonic{}, 0.0, OdeState{0.0, 3.0, 0.0}, 5.0, tol);
    CHECK(flat.final_state.value == doctest::Approx(3.0).epsilon(1e-14));

    auto back = integrate_ode(Harmonic{}, 4.0, OdeState{1.0, std::sin(2.0), 2.0 * std::cos(2.0)}, -1.0, tol);
    CHECK(std::abs(back.final_state.value - std::sin(-2.0)) < 1e-10);
}

TEST_CASE("sample points are hit exactly and dense output interpolates") {
    Tolerances tol;
    OdeOptions opt;
    opt.sample_points = {2.5, 0.3, 1.0};
    opt.dense = true;
    auto traj = integrate_ode(Harmonic{}, 1.0, OdeState{0.0, 0.0, 1.0}, 3.0, tol, opt);
    REQUIRE(traj.samples.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(traj.samples[i].x == opt.sample_points[i]);
        CHECK(std::abs(traj.samples[i].value - std::sin(opt.sample_points[i])) < 1e-10);
    }
    double worst = 0.0;
    for (double x = 0.0; x <= 3.0; x += 0.01) {
        OdeState s = traj.at(x);
        worst = std::max({worst, std::abs(s.value - std::sin(x)), std::abs(s.derivative - std::cos(x))});
    }
    CHECK(worst < 1e-7);
    CHECK_THROWS_AS(traj.at(3.5), RangeError);
    opt.sample_points = {4.0};
    CHECK_THROWS_AS(integrate_ode(Harmonic{}, 1.0, OdeState{0.0, 0.0, 1.0}, 3.0, tol, opt), RangeError);
}

TEST_CASE("Wronskian of two solutions is preserved") {
    Tolerances tol;
    Variable eq;
    for (double mu : {-3.0, 0.5, 40.0}) {
        OdeOptions opt;
        opt.sample_points = {1.3, 1.9, 2.4, 3.0};
        auto a = integrate_ode(eq, mu, OdeState{1.0, 1.0, 0.0}, 3.0, tol, opt);
        auto b = integrate_ode(eq, mu, OdeState{1.0, 0.0, 1.0}, 3.0, tol, opt);
        const double w0 = eq.p(1.0) * (0.0 * 0.0 - 1.0 * 1.0);
        for (std::size_t i = 0; i < opt.sample_points.size(); ++i) {
            const auto& s = a.samples[i];
            const auto& t = b.samples[i];
            const double w = eq.p(s.x) * (s.derivative * t.value - t.derivative * s.value);
            CHECK(std::abs(w - w0) <= 1e-8 * std::abs(w0));
        }
    }
}

TEST_CASE("tighter tolerances move results by less than the looser error budget") {
    Variable eq;
    Tolerances loose{1e-8, 1e-8, 200000};
    Tolerances tight{5e-9, 5e-9, 200000};
    auto a = integrate_ode(eq, 7.0, OdeState{1.0, 1.0, 0.0}, 3.0, loose);
    auto b = integrate_ode(eq, 7.0, OdeState{1.0, 1.0, 0.0}, 3.0, tight);
    CHECK(std::abs(a.final_state.value - b.final_state.value) < 1e-7);
}

TEST_CASE("singular coefficient produces an integration error") {
    FunctionCoefficients eq{[](double x) { return 1.0 - x; }, [](double) { return -1.0; },
                            [](double) { return 0.0; }};
    Tolerances tol;
    try {
        // p vanishes at 1 and the solution blows up logarithmically there.
        integrate_ode(eq, 0.0, OdeState{0.0, 0.0, 1.0}, 2.0, tol);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.last_x() < 1.0);
        CHECK(e.last_x() > 0.9);
    }
    CHECK_THROWS_AS(integrate_ode(Harmonic{}, 0.0, OdeState{0.0, NAN, 0.0}, 1.0, tol), DomainError);
}
