#ifndef PROLATE_NUMKIT_TOLERANCES_HPP
#define PROLATE_NUMKIT_TOLERANCES_HPP

namespace prolate {

/// Error budget shared by the quadrature, root and ODE routines.
struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_steps = 200000;

    /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_steps >= 1.
    void validate() const;

    /// Both error budgets multiplied by `factor` (the CLI's --tol knob).
    Tolerances scaled(double factor) const;
};

} // namespace prolate

#endif
