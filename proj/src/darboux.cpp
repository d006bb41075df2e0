#include "prolate/darboux.hpp"

#include "prolate/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace prolate {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

double potential(double lambda, double x) {
    const double s = 2.0 * pi * lambda * x;
    return s * s;
}

// Steps short enough for the quintic dense output to stay near the integration tolerance.
double dense_step(double lambda) { return 0.08 / (2.0 * pi * lambda); }

} // namespace

ZeroModeBasis::ZeroModeBasis(double lambda, double x_max, const ShootingOptions& options)
    : lambda_(lambda), x_max_(x_max), options_(options) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("zero_mode_basis: lambda must be positive");
    const double delta = options.delta_factor * lambda;
    x_min_ = lambda + delta;
    if (!(x_max > x_min_) || !std::isfinite(x_max))
        throw DomainError("zero_mode_basis: x_max must exceed lambda + delta");

    init1_ = eval_regular_solution(frobenius_coeffs(lambda, 0.0, options.frobenius_order), x_min_);

    // u2 from (0, 1) at lambda + delta, then made orthogonal to u1 with the same norm over one
    // period 1/lambda a short way out. Both decay like 1/x with phases a quarter period apart,
    // so u1 + z u2 keeps |u| away from 0 and w_z stays smooth.
    const ProlateCoefficients eq{lambda};
    const double x_ref = lambda + 1.0;
    const int m = 64;
    OdeOptions window;
    for (int j = 0; j < m; ++j) window.sample_points.push_back(x_ref + j / (m * lambda));
    const OdeState raw{x_min_, 0.0, 1.0};
    const OdeTrajectory w1 = integrate_ode(eq, 0.0, init1_, window.sample_points.back(), options.tol, window);
    const OdeTrajectory w2 = integrate_ode(eq, 0.0, raw, window.sample_points.back(), options.tol, window);
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
    for (int j = 0; j < m; ++j) {
        a11 += w1.samples[j].value * w1.samples[j].value;
        a12 += w1.samples[j].value * w2.samples[j].value;
        a22 += w2.samples[j].value * w2.samples[j].value;
    }
    const double c = a12 / a11;
    const double rest = a22 - c * a12;
    if (!(rest > 1e-14 * a22)) throw NumericError("zero_mode_basis: second solution is not independent");
    double alpha = std::sqrt(a11 / rest);
    // Orientation: positive Wronskian p (u1' u2 - u1 u2').
    const double p0 = x_min_ * x_min_ - lambda * lambda;
    if (p0 * (init1_.derivative * raw.value - init1_.value * raw.derivative) < 0.0) alpha = -alpha;
    init2_ = OdeState{x_min_, alpha * (raw.value - c * init1_.value),
                      alpha * (raw.derivative - c * init1_.derivative)};

    OdeOptions dense;
    dense.dense = true;
    dense.max_step = dense_step(lambda);
    u1_ = integrate_ode(eq, 0.0, init1_, x_max, options.tol, dense);
    u2_ = integrate_ode(eq, 0.0, init2_, x_max, options.tol, dense);
}

ZeroModeValue ZeroModeBasis::at(double x) const {
    if (!(x >= x_min_ && x <= x_max_))
        throw DomainError("zero_mode_basis: x = " + std::to_string(x) + " outside [" + std::to_string(x_min_) +
                          ", " + std::to_string(x_max_) + "]");
    const OdeState a = u1_.at(x), b = u2_.at(x);
    return {x, a.value, a.derivative, b.value, b.derivative};
}

std::vector<ZeroModeValue> ZeroModeBasis::sample(const std::vector<double>& xs) const {
    if (xs.empty()) return {};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= x_min_) || (i > 0 && !(xs[i] > xs[i - 1])))
            throw DomainError("zero_mode_basis: sample grid must be increasing and start at lambda + delta or later");
    }
    const ProlateCoefficients eq{lambda_};
    OdeOptions opts;
    opts.sample_points = xs;
    opts.max_step = dense_step(lambda_);
    const OdeTrajectory a = integrate_ode(eq, 0.0, init1_, xs.back(), options_.tol, opts);
    const OdeTrajectory b = integrate_ode(eq, 0.0, init2_, xs.back(), options_.tol, opts);
    std::vector<ZeroModeValue> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = {xs[i], a.samples[i].value, a.samples[i].derivative, b.samples[i].value, b.samples[i].derivative};
    return out;
}

double ZeroModeBasis::wronskian(double x) const {
    const ZeroModeValue v = at(x);
    return (x * x - lambda_ * lambda_) * (v.du1 * v.u2 - v.u1 * v.du2);
}

RiccatiSolution::RiccatiSolution(std::shared_ptr<const ZeroModeBasis> basis, cplx z)
    : basis_(std::move(basis)), z_(z) {
    if (!basis_) throw DomainError("riccati: null basis");
    if (!(z.imag() != 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("riccati: z must have a nonzero imaginary part (u = u1 + z u2 has zeros for real z)");
}

cplx RiccatiSolution::w_from(const ZeroModeValue& v) const {
    const double l = basis_->lambda();
    const double p = v.x * v.x - l * l, sp = std::sqrt(p);
    const cplx u = v.u1 + z_ * v.u2, du = v.du1 + z_ * v.du2;
    return sp * du / u + v.x / (2.0 * sp);
}

cplx RiccatiSolution::dw_from(const ZeroModeValue& v) const {
    const double l = basis_->lambda();
    const double x = v.x;
    const double p = x * x - l * l, sp = std::sqrt(p);
    const cplx u = v.u1 + z_ * v.u2, du = v.du1 + z_ * v.du2;
    const cplx g = du / u;
    // (p u')' + V u = 0  =>  u'' / u = -(2 x g + V) / p
    const cplx ddu_over_u = -(2.0 * x * g + potential(l, x)) / p;
    const cplx dg = ddu_over_u - g * g;
    return x / sp * g + sp * dg + 1.0 / (2.0 * sp) - x * x / (2.0 * p * sp);
}

cplx RiccatiSolution::w(double x) const { return w_from(basis_->at(x)); }

cplx RiccatiSolution::dw(double x) const { return dw_from(basis_->at(x)); }

double RiccatiSolution::residual(double x) const {
    const ZeroModeValue v = basis_->at(x);
    const double l = basis_->lambda();
    const cplx w = w_from(v);
    return std::abs(std::sqrt(x * x - l * l) * dw_from(v) + w * w - riccati_rhs(l, x));
}

double riccati_rhs(double lambda, double x) {
    const double p = x * x - lambda * lambda;
    return -potential(lambda, x) - x * x / (4.0 * p) + 0.5;
}

cplx riccati_w(double lambda, cplx z, double x, const ShootingOptions& options) {
    auto basis = std::make_shared<const ZeroModeBasis>(lambda, std::max(x, 10.0), options);
    return RiccatiSolution(basis, z).w(x);
}

double riccati_residual(double lambda, cplx z, const std::vector<double>& grid, const ShootingOptions& options) {
    if (grid.empty()) return 0.0;
    const double hi = *std::max_element(grid.begin(), grid.end());
    auto basis = std::make_shared<const ZeroModeBasis>(lambda, hi, options);
    const RiccatiSolution sol(basis, z);
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, sol.residual(x));
    return worst;
}

TestFunction make_bump(double a, double b, double scale) {
    if (!(b > a)) throw DomainError("make_bump: requires a < b");
    TestFunction t;
    t.a = a;
    t.b = b;
    t.f = [a, b, scale](double x) {
        const double s = (2.0 * x - a - b) / (b - a);
        if (std::abs(s) >= 1.0) return 0.0;
        return scale * std::exp(-1.0 / (1.0 - s * s));
    };
    return t;
}

namespace {

// Eighth-order central first derivative at interior index i (needs 4 neighbours each side).
template <class T>
T d1(const std::vector<T>& y, std::size_t i, double h) {
    static constexpr std::array<double, 4> c{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    T s{};
    for (std::size_t j = 0; j < 4; ++j) s += c[j] * (y[i + j + 1] - y[i - j - 1]);
    return s / h;
}

} // namespace

FactorizationResidual factorization_residual(double lambda, cplx z, const std::vector<TestFunction>& testfns,
                                             const FactorizationOptions& options) {
    if (!(options.h > 0.0)) throw DomainError("factorization_residual: h must be positive");
    const double delta = options.shooting.delta_factor * lambda;
    FactorizationResidual worst;
    for (const TestFunction& t : testfns) {
        if (!t.f) throw DomainError("factorization_residual: empty test function");
        // Support plus 8 cells of zeros on each side so the nested stencils see the support edges.
        const double lo = t.a - 8.0 * options.h;
        const int n = static_cast<int>(std::ceil((t.b - t.a) / options.h)) + 17;
        if (!(lo > lambda + delta)) throw DomainError("factorization_residual: support must lie inside (lambda, inf)");
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = lo + i * options.h;

        auto basis = std::make_shared<const ZeroModeBasis>(lambda, xs.back(), options.shooting);
        const RiccatiSolution sol(basis, z);
        const auto zm = basis->sample(xs);

        std::vector<double> f(n), p(n), sp(n), qp(n);
        std::vector<cplx> w(n), g(n);
        for (int i = 0; i < n; ++i) {
            const double x = xs[i];
            p[i] = x * x - lambda * lambda;
            sp[i] = std::sqrt(p[i]);
            qp[i] = std::sqrt(sp[i]);
            f[i] = t.f(x);
            w[i] = sol.w_from(zm[i]);
            g[i] = qp[i] * f[i]; // U f
        }
        // First-level derivatives on indices [4, n - 4).
        std::vector<double> pf1(n, 0.0);
        std::vector<cplx> minus1(n, 0.0), plus1(n, 0.0), nabla_w(n, 0.0);
        for (int i = 4; i < n - 4; ++i) {
            const cplx dg = d1(g, i, options.h);
            minus1[i] = sp[i] * dg - w[i] * g[i]; // (nabla - w) U f
            plus1[i] = sp[i] * dg + w[i] * g[i];  // (nabla + w) U f
            pf1[i] = p[i] * d1(f, i, options.h);
            nabla_w[i] = sp[i] * d1(w, i, options.h);
        }
        double n1 = 0.0, d1sum = 0.0, n2 = 0.0, d2sum = 0.0;
        for (int i = 8; i < n - 8; ++i) {
            const double Lf = d1(pf1, i, options.h) + potential(lambda, xs[i]) * f[i];
            const cplx first = (sp[i] * d1(minus1, i, options.h) + w[i] * minus1[i]) / qp[i];
            const cplx second = (sp[i] * d1(plus1, i, options.h) - w[i] * plus1[i]) / qp[i];
            const cplx target2 = Lf + 2.0 * nabla_w[i] * f[i];
            n1 += std::norm(first - Lf);
            d1sum += Lf * Lf;
            n2 += std::norm(second - target2);
            d2sum += std::norm(target2);
        }
        if (d1sum > 0.0) worst.first = std::max(worst.first, std::sqrt(n1 / d1sum));
        if (d2sum > 0.0) worst.second = std::max(worst.second, std::sqrt(n2 / d2sum));
    }
    return worst;
}

int DiracSpectrum::count_imaginary(double E) const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [E](const DiracEigenvalue& d) {
        return d.xi.imag() > 0.0 && d.xi.imag() <= E;
    }));
}

std::vector<double> DiracSpectrum::positive_imaginary() const {
    std::vector<double> out;
    for (const auto& d : entries)
        if (d.xi.imag() > 0.0) out.push_back(d.xi.imag());
    std::sort(out.begin(), out.end());
    return out;
}

DiracSpectrum dirac_eigenvalues(double lambda, const std::vector<EigenvalueRecord>& w_spectrum,
                                double coverage) {
    DiracSpectrum s;
    s.lambda = lambda;
    for (const auto& r : w_spectrum) {
        const double root = 2.0 * std::sqrt(std::abs(r.mu));
        const cplx xi = r.mu < 0.0 ? cplx(0.0, root) : cplx(root, 0.0);
        for (int branch : {1, -1}) {
            DiracEigenvalue d{static_cast<double>(branch) * xi, r.mu, branch, r.index};
            // Holds exactly: (+-2 sqrt|a|)^2 = 4|a| and (+-2i sqrt|a|)^2 = -4|a|.
            const cplx sq = d.xi * d.xi;
            if (std::abs(sq - 4.0 * r.mu) > 1e-12 * std::max(1.0, 4.0 * std::abs(r.mu)))
                throw NumericError("dirac_eigenvalues: xi^2 != 4 alpha");
            s.entries.push_back(d);
        }
    }
    std::sort(s.entries.begin(), s.entries.end(), [](const DiracEigenvalue& a, const DiracEigenvalue& b) {
        const double ia = std::abs(a.xi.imag()), ib = std::abs(b.xi.imag());
        if (ia != ib) return ia < ib;
        const double ra = std::abs(a.xi.real()), rb = std::abs(b.xi.real());
        if (ra != rb) return ra < rb;
        return a.branch > b.branch;
    });
    if (coverage >= 0.0) {
        s.coverage = coverage;
    } else {
        for (const auto& e : s.entries) s.coverage = std::max(s.coverage, e.xi.imag());
    }
    return s;
}

} // namespace prolate
