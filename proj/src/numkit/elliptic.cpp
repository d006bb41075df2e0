#include "prolate/numkit/elliptic.hpp"

#include "prolate/errors.hpp"

#include <cmath>
#include <numbers>

namespace prolate {

namespace {

struct AgmResult {
    double mean;
    double weighted_sum; // sum_{n>=0} 2^{n-1} c_n^2
};

// AGM(1, sqrt(1-m)) together with the c_n sum needed for E(m).
AgmResult agm(double m) {
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double sum = 0.5 * m; // c_0^2 = m, weight 2^{-1}
    double pow2 = 0.5;
    for (int it = 0; it < 64; ++it) {
        double c = 0.5 * (a - b);
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
        if (std::abs(c) <= 1e-15 * a) break; // later terms are below rounding
    }
    return {a, sum};
}

} // namespace

double elliptic_K(double m) {
    if (std::isnan(m) || m >= 1.0) throw DomainError("elliptic_K: requires m < 1");
    return std::numbers::pi / (2.0 * agm(m).mean);
}

double elliptic_E(double m) {
    if (std::isnan(m) || m > 1.0) throw DomainError("elliptic_E: requires m <= 1");
    if (m == 1.0) return 1.0;
    AgmResult r = agm(m);
    return std::numbers::pi / (2.0 * r.mean) * (1.0 - r.weighted_sum);
}

} // namespace prolate
