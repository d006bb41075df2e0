#include "prolate/numkit/tolerances.hpp"

#include "prolate/errors.hpp"

#include <cmath>

namespace prolate {

void Tolerances::validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
        throw DomainError("Tolerances: abs_tol must be positive");
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw DomainError("Tolerances: rel_tol must be positive");
    if (max_steps < 1) throw DomainError("Tolerances: max_steps must be at least 1");
}

Tolerances Tolerances::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw DomainError("Tolerances::scaled: factor must be positive");
    Tolerances t = *this;
    t.abs_tol *= factor;
    t.rel_tol *= factor;
    return t;
}

} // namespace prolate
