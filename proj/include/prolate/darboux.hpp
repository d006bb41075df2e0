#ifndef PROLATE_DARBOUX_HPP
#define PROLATE_DARBOUX_HPP

#include "prolate/eigensolve.hpp"
#include "prolate/local_solutions.hpp"
#include "prolate/numkit/ode.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace prolate {

struct ZeroModeValue {
    double x = 0.0;
    double u1 = 0.0, du1 = 0.0;
    double u2 = 0.0, du2 = 0.0;
};

/// Real solutions u1, u2 of L u = (p u')' + V u = 0 on (lambda, x_max], p = x^2 - lambda^2,
/// V = 4 pi^2 lambda^2 x^2 (the mu = 0 solutions of the prolate equation).
///
/// u1 is the solution regular at lambda. u2 starts at lambda + delta from (0, 1) and is
/// then made L2-orthogonal to u1, with equal norm, over one period starting at lambda + 1.
/// The Wronskian p (u1' u2 - u1 u2') is constant and positive.
class ZeroModeBasis {
  public:
    ZeroModeBasis(double lambda, double x_max, const ShootingOptions& options = {});

    double lambda() const { return lambda_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }

    /// Dense evaluation; throws DomainError outside [x_min, x_max].
    ZeroModeValue at(double x) const;

    /// Values on an increasing grid, integrated afresh so the steps land on every point.
    std::vector<ZeroModeValue> sample(const std::vector<double>& xs) const;

    /// p (u1' u2 - u1 u2') at x.
    double wronskian(double x) const;

  private:
    double lambda_, x_min_, x_max_;
    ShootingOptions options_;
    OdeState init1_, init2_;
    OdeTrajectory u1_, u2_;
};

/// w_z(x) = p^{1/4} (p^{1/4} u)' / u with u = u1 + z u2, and its analytic derivative.
class RiccatiSolution {
  public:
    /// Throws DomainError unless Im z != 0.
    RiccatiSolution(std::shared_ptr<const ZeroModeBasis> basis, std::complex<double> z);

    std::complex<double> z() const { return z_; }
    const ZeroModeBasis& basis() const { return *basis_; }

    std::complex<double> w(double x) const;
    /// w'(x) by the quotient rule, with u'' taken from the equation.
    std::complex<double> dw(double x) const;

    std::complex<double> w_from(const ZeroModeValue& v) const;
    std::complex<double> dw_from(const ZeroModeValue& v) const;

    /// |sqrt(p) w' + w^2 - rhs(x)| at x.
    double residual(double x) const;

  private:
    std::shared_ptr<const ZeroModeBasis> basis_;
    std::complex<double> z_;
};

/// Right side -V - x^2 / (4 p) + 1/2 of the Riccati equation.
double riccati_rhs(double lambda, double x);

/// w_z(x) with a basis built up to max(x, 10). Throws DomainError for Im z = 0 or x <= lambda + delta.
std::complex<double> riccati_w(double lambda, std::complex<double> z, double x,
                               const ShootingOptions& options = {});

/// sup over the grid of |sqrt(p) w' + w^2 - rhs|, w' analytic.
double riccati_residual(double lambda, std::complex<double> z, const std::vector<double>& grid,
                        const ShootingOptions& options = {});

/// Smooth test function with compact support [a, b].
struct TestFunction {
    std::function<double(double)> f;
    double a = 0.0;
    double b = 0.0;
};

/// exp(-1 / (1 - t^2)) with t mapping [a, b] onto [-1, 1], times `scale`.
TestFunction make_bump(double a, double b, double scale = 1.0);

struct FactorizationOptions {
    /// Grid spacing of the eighth-order difference stencils.
    double h = 2e-3;
    ShootingOptions shooting;
};

struct FactorizationResidual {
    /// max over test functions of ||U*(nabla + w)(nabla - w)U f - L f|| / ||L f||.
    double first = 0.0;
    /// Same for U*(nabla - w)(nabla + w)U f against (L + 2 nabla w) f.
    double second = 0.0;
};

/// Verifies both diagonal entries of the factorization on test functions supported in
/// (lambda, inf); all derivatives are eighth-order central differences on a uniform grid.
/// A test function identically zero contributes 0.
FactorizationResidual factorization_residual(double lambda, std::complex<double> z,
                                             const std::vector<TestFunction>& testfns,
                                             const FactorizationOptions& options = {});

struct DiracEigenvalue {
    std::complex<double> xi;
    double alpha = 0.0; // source eigenvalue, xi^2 = 4 alpha
    int branch = 1;     // +1 or -1
    int source_index = 0;
};

struct DiracSpectrum {
    double lambda = 0.0;
    std::vector<DiracEigenvalue> entries;
    /// Im xi up to which no eigenvalue is missing.
    double coverage = 0.0;

    /// Number of entries with Im xi in (0, E].
    int count_imaginary(double E) const;
    /// Imaginary parts of the entries with Im xi > 0, increasing.
    std::vector<double> positive_imaginary() const;
};

/// xi = +-2 sqrt(alpha) for every record, sorted by |Im xi| then |Re xi| (then branch).
/// `coverage` defaults to the largest Im xi; pass 2 sqrt(-mu_min) when the records are the
/// complete negative spectrum down to mu_min.
DiracSpectrum dirac_eigenvalues(double lambda, const std::vector<EigenvalueRecord>& w_spectrum,
                                double coverage = -1.0);

} // namespace prolate

#endif
