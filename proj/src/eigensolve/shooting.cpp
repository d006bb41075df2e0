#include "prolate/eigensolve.hpp"

#include "prolate/errors.hpp"
#include "prolate/numkit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace prolate {

namespace {

using std::numbers::pi;

double wrap_angle(double d) {
    while (d > pi) d -= 2.0 * pi;
    while (d <= -pi) d += 2.0 * pi;
    return d;
}

unsigned worker_count(const SolverOptions& options, std::size_t jobs) {
    unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Evaluates fn(i) for i in [0, n) on contiguous chunks; exceptions are rethrown in order.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double inner_angle(const ProlateProblem& pr, double mu, const ShootingOptions& options) {
    const double lambda = pr.lambda;
    const double x_end = lambda * (1.0 - options.delta_factor);
    const OdeState init = pr.parity == Parity::even ? OdeState{0.0, 1.0, 0.0} : OdeState{0.0, 0.0, 1.0};
    const OdeTrajectory traj = integrate_ode(ProlateCoefficients{lambda}, mu, init, x_end, options.tol);
    const OdeState f = eval_regular_solution(frobenius_coeffs(lambda, mu, options.frobenius_order), x_end);
    const double p = lambda * lambda - x_end * x_end;
    const double s = 2.0 * lambda;
    const double xi0 = traj.final_state.value, xi1 = p * traj.final_state.derivative / s;
    const double f0 = f.value, f1 = p * f.derivative / s;
    return std::atan2(xi0 * f1 - xi1 * f0, xi0 * f0 + xi1 * f1);
}

double outer_angle(const ProlateProblem& pr, double mu, const ShootingOptions& options) {
    const OuterConnection c = connect_to_infinity(pr.lambda, mu, options);
    return pr.parity == Parity::even ? std::atan2(c.b, c.a) : std::atan2(c.a, c.b);
}

struct Sample {
    double mu;
    double theta;
};

} // namespace

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }
std::string to_string(Region r) { return r == Region::inner ? "inner" : "outer"; }
std::string to_string(Method m) { return m == Method::shooting ? "shooting" : "oracle"; }

Parity parse_parity(const std::string& s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw UsageError("parity must be 'even' or 'odd', got '" + s + "'");
}

Region parse_region(const std::string& s) {
    if (s == "inner") return Region::inner;
    if (s == "outer") return Region::outer;
    throw UsageError("region must be 'inner' or 'outer', got '" + s + "'");
}

void ProlateProblem::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
}

double matching_angle(const ProlateProblem& problem, double mu, const ShootingOptions& options) {
    problem.validate();
    if (!std::isfinite(mu)) throw DomainError("matching_angle: mu must be finite");
    return problem.region == Region::inner ? inner_angle(problem, mu, options)
                                           : outer_angle(problem, mu, options);
}

double matching_coefficient(const ProlateProblem& problem, double mu, const ShootingOptions& options) {
    return std::sin(matching_angle(problem, mu, options));
}

std::vector<EigenvalueRecord> scan_spectrum(const ProlateProblem& problem, double mu_min,
                                            double mu_max, int steps, const SolverOptions& options) {
    problem.validate();
    if (!(mu_min < mu_max)) throw DomainError("scan_spectrum: requires mu_min < mu_max");
    if (steps < 2) throw DomainError("scan_spectrum: requires steps >= 2");

    auto angle = [&](double mu) { return matching_angle(problem, mu, options.shooting); };

    std::vector<Sample> grid(static_cast<std::size_t>(steps));
    for (int j = 0; j < steps; ++j)
        grid[j].mu = j == steps - 1 ? mu_max : mu_min + (mu_max - mu_min) * j / (steps - 1.0);
    parallel_for(grid.size(), worker_count(options, grid.size()),
                 [&](std::size_t i) { grid[i].theta = angle(grid[i].mu); });

    // Refine until the angle moves by at most pi/2 between neighbours, so no pair of
    // eigenvalues can hide inside one interval.
    const double min_width = 1e-10 * std::max(1.0, std::max(std::abs(mu_min), std::abs(mu_max)));
    for (int level = 0; level < 40; ++level) {
        std::vector<std::size_t> split;
        for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
            if (std::abs(wrap_angle(grid[j + 1].theta - grid[j].theta)) > 0.5 * pi &&
                grid[j + 1].mu - grid[j].mu > min_width)
                split.push_back(j);
        }
        if (split.empty()) break;
        std::vector<Sample> mids(split.size());
        parallel_for(mids.size(), worker_count(options, mids.size()), [&](std::size_t i) {
            mids[i].mu = 0.5 * (grid[split[i]].mu + grid[split[i] + 1].mu);
            mids[i].theta = angle(mids[i].mu);
        });
        std::vector<Sample> merged;
        merged.reserve(grid.size() + mids.size());
        std::size_t k = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            merged.push_back(grid[j]);
            if (k < split.size() && split[k] == j) merged.push_back(mids[k++]);
        }
        grid = std::move(merged);
    }

    struct Bracket {
        double lo, hi, f_lo, f_hi;
    };
    std::vector<Bracket> brackets;
    std::vector<double> exact;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = std::sin(grid[j].theta);
        if (s == 0.0) exact.push_back(grid[j].mu);
        if (j + 1 < grid.size()) {
            const double t = std::sin(grid[j + 1].theta);
            if ((s < 0.0 && t > 0.0) || (s > 0.0 && t < 0.0))
                brackets.push_back({grid[j].mu, grid[j + 1].mu, s, t});
        }
    }

    const Tolerances root_tol{options.root_rel_tol, options.root_rel_tol, 200};
    std::vector<EigenvalueRecord> out(brackets.size());
    parallel_for(brackets.size(), worker_count(options, brackets.size()), [&](std::size_t i) {
        const Bracket& b = brackets[i];
        auto f = [&](double mu) { return std::sin(angle(mu)); };
        const double mu = brent_root(f, b.lo, b.hi, b.f_lo, b.f_hi, root_tol);
        out[i] = EigenvalueRecord{mu, 0, std::abs(f(mu)), Method::shooting, false};
    });
    for (double mu : exact) out.push_back(EigenvalueRecord{mu, 0, 0.0, Method::shooting, false});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
    return out;
}

std::vector<EigenvalueRecord> inner_spectrum(double lambda, Parity parity, int n_max,
                                             const SolverOptions& options) {
    if (n_max < 0) throw DomainError("inner_spectrum: n_max must be non-negative");
    const ProlateProblem problem{lambda, parity, Region::inner};
    problem.validate();
    // chi_m lies in [m(m+1), m(m+1) + c^2] with c = 2 pi lambda^2 and m = 2n + parity.
    const double c = 2.0 * pi * lambda * lambda;
    const int m_top = 2 * n_max + (parity == Parity::odd ? 1 : 0);
    const double lo = -1.0;
    const double hi = m_top * (m_top + 1.0) + c * c + 1.0;
    auto records = scan_spectrum(problem, lo, hi, 8 * (n_max + 1) + 16, options);
    if (static_cast<int>(records.size()) < n_max + 1)
        throw NumericError("inner_spectrum: found " + std::to_string(records.size()) +
                           " eigenvalues, expected at least " + std::to_string(n_max + 1));
    records.resize(static_cast<std::size_t>(n_max) + 1);
    return records;
}

std::vector<EigenvalueRecord> outer_negative_spectrum(double lambda, Parity parity, double mu_min,
                                                      const SolverOptions& options) {
    if (!(mu_min < 0.0)) throw DomainError("outer_negative_spectrum: mu_min must be negative");
    const ProlateProblem problem{lambda, parity, Region::outer};
    problem.validate();
    std::vector<EigenvalueRecord> all;
    double hi = 0.0;
    while (hi > mu_min) {
        const double lo = std::max(mu_min, hi - (200.0 + 0.5 * std::abs(hi)));
        auto part = scan_spectrum(problem, lo, hi, 96, options);
        for (const auto& r : part) {
            // Chunks share end points; keep a root on the shared point only once.
            if (r.mu >= 0.0) continue;
            if (!all.empty() && std::abs(all.back().mu - r.mu) <= 1e-9 * std::max(1.0, std::abs(r.mu)))
                continue;
            all.push_back(r);
        }
        std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.mu > b.mu; });
        hi = lo;
    }
    for (std::size_t i = 0; i < all.size(); ++i) all[i].index = static_cast<int>(i);
    return all;
}

std::vector<EigenvalueRecord> outer_spectrum(double lambda, Parity parity, int count,
                                             const SolverOptions& options) {
    if (count < 1) throw DomainError("outer_spectrum: count must be at least 1");
    const ProlateProblem problem{lambda, parity, Region::outer};
    problem.validate();
    std::vector<EigenvalueRecord> all;
    double hi = 0.0;
    while (static_cast<int>(all.size()) < count) {
        const double lo = hi - (200.0 + 0.5 * std::abs(hi));
        auto part = scan_spectrum(problem, lo, hi, 96, options);
        for (const auto& r : part) {
            if (r.mu >= 0.0) continue;
            bool dup = false;
            for (const auto& q : all)
                if (std::abs(q.mu - r.mu) <= 1e-9 * std::max(1.0, std::abs(r.mu))) dup = true;
            if (!dup) all.push_back(r);
        }
        hi = lo;
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.mu > b.mu; });
    all.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < all.size(); ++i) all[i].index = static_cast<int>(i);
    return all;
}

std::vector<EigenvalueRecord> outer_positive_spectrum(double lambda, Parity parity, double mu_max,
                                                      const SolverOptions& options) {
    if (!(mu_max > 0.0)) throw DomainError("outer_positive_spectrum: mu_max must be positive");
    const ProlateProblem problem{lambda, parity, Region::outer};
    problem.validate();
    auto outer = scan_spectrum(problem, 0.0, mu_max, 16 + static_cast<int>(std::sqrt(mu_max)) * 4, options);

    // Inner eigenvalues of the same parity up to mu_max (plus margin) for the replica test.
    const ProlateProblem inner{lambda, parity, Region::inner};
    auto inner_eigs = scan_spectrum(inner, -1.0, mu_max + 1.0, 16 + static_cast<int>(std::sqrt(mu_max)) * 4, options);
    std::vector<EigenvalueRecord> out;
    for (const auto& r : outer) {
        if (r.mu <= 0.0) continue;
        EigenvalueRecord rec = r;
        for (const auto& q : inner_eigs)
            if (std::abs(q.mu - r.mu) <= 1e-4 * std::max(1.0, std::abs(r.mu))) rec.replica = true;
        out.push_back(rec);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
    return out;
}

} // namespace prolate
