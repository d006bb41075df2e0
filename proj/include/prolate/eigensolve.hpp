#ifndef PROLATE_EIGENSOLVE_HPP
#define PROLATE_EIGENSOLVE_HPP

#include "prolate/local_solutions.hpp"

#include <string>
#include <vector>

namespace prolate {

enum class Parity { even, odd };
enum class Region { inner, outer };
enum class Method { shooting, oracle };

std::string to_string(Parity p);
std::string to_string(Region r);
std::string to_string(Method m);
Parity parse_parity(const std::string& s);  // throws UsageError
Region parse_region(const std::string& s);  // throws UsageError

/// One of the four self-adjoint pieces: inner [0, lambda) or outer (lambda, inf), even or odd.
struct ProlateProblem {
    double lambda = 1.0;
    Parity parity = Parity::even;
    Region region = Region::inner;

    void validate() const;
};

struct EigenvalueRecord {
    double mu = 0.0;
    /// Inner spectra count from the bottom; outer negative spectra count from
    /// mu = 0 downwards.
    int index = 0;
    /// |matching functional| at mu for shooting, Richardson correction size for the oracle.
    double residual = 0.0;
    Method method = Method::shooting;
    /// Positive outer eigenvalue that coincides with an inner eigenvalue of the same parity.
    bool replica = false;
};

struct SolverOptions {
    ShootingOptions shooting;
    /// Worker threads for mu scans; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Relative location tolerance for refined eigenvalues.
    double root_rel_tol = 1e-13;
};

/// Matching angle theta(mu): the eigenvalue condition is sin(theta) = 0.
///
/// Outer: f_mu = a S + b C on the matching window, theta = atan2(disallowed, allowed)
/// where the allowed member is S for even and C for odd problems. Inner: angle between
/// (xi, p xi' / 2 lambda) of the parity solution started at 0 and the same vector of
/// the regular solution f_mu, both taken at lambda - delta.
double matching_angle(const ProlateProblem& problem, double mu, const ShootingOptions& options = {});

/// sin(matching_angle): scale free, continuous in mu, zero exactly at eigenvalues.
double matching_coefficient(const ProlateProblem& problem, double mu,
                            const ShootingOptions& options = {});

/// All eigenvalues in [mu_min, mu_max], bracketed on a grid of `steps` points (refined
/// wherever the angle moves by more than pi/2 between neighbours) and polished by Brent.
/// Records are sorted by mu; `index` is the position in the returned list.
std::vector<EigenvalueRecord> scan_spectrum(const ProlateProblem& problem, double mu_min,
                                            double mu_max, int steps,
                                            const SolverOptions& options = {});

/// chi(0) < ... < chi(n_max) of the inner problem.
std::vector<EigenvalueRecord> inner_spectrum(double lambda, Parity parity, int n_max,
                                             const SolverOptions& options = {});

/// The `count` negative eigenvalues of the outer problem closest to 0, ordered by decreasing mu.
std::vector<EigenvalueRecord> outer_spectrum(double lambda, Parity parity, int count,
                                             const SolverOptions& options = {});

/// Negative outer eigenvalues in [mu_min, 0), ordered by decreasing mu.
std::vector<EigenvalueRecord> outer_negative_spectrum(double lambda, Parity parity, double mu_min,
                                                      const SolverOptions& options = {});

/// Positive outer eigenvalues in (0, mu_max]; `replica` marks those shared with the inner problem.
std::vector<EigenvalueRecord> outer_positive_spectrum(double lambda, Parity parity, double mu_max,
                                                      const SolverOptions& options = {});

/// Eigenvalues of a three-point finite-volume discretization of the problem in the
/// variable x = lambda sin(theta) (inner) or x = lambda cosh(u) (outer), Richardson
/// extrapolated from grid_size and 2 grid_size. grid_size counts cells on [0, pi/2] for
/// the inner problem and cells per wavelength at the truncation point for the outer one,
/// where the exact outgoing Robin condition is imposed. Returns the first `count`
/// eigenvalues in the same order as inner_spectrum / outer_spectrum.
/// Throws DomainError for grid_size < 50.
std::vector<EigenvalueRecord> oracle_matrix_spectrum(const ProlateProblem& problem, int grid_size,
                                                     int count);

/// Same discretization without extrapolation (one grid), for convergence studies.
std::vector<EigenvalueRecord> oracle_matrix_spectrum_raw(const ProlateProblem& problem,
                                                         int grid_size, int count);

} // namespace prolate

#endif
