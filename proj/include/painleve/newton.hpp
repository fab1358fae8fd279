#ifndef PAINLEVE_NEWTON_HPP
#define PAINLEVE_NEWTON_HPP

#include <Eigen/Core>

#include <cmath>
#include <optional>

#include "painleve/errors.hpp"

namespace painleve {

struct NewtonSettings {
    double tolerance = 1e-10;
    int max_iter = 50;
    /// Fraction of the full Newton step tried first, in (0, 1].
    double damping = 1.0;
    int max_halvings = 30;
    /// Extra full steps taken after the tolerance is met, kept only if they
    /// lower the residual further.
    int polish_steps = 1;
};

/// Damped Newton on F(u) = 0 with backtracking by halving until the residual
/// sup-norm decreases.
///
/// `residual(u)` returns F(u); `solve_step(u, r)` returns the Newton direction
/// d with J(u) d = -r, or nullopt when the linear solve breaks down.
template <typename Residual, typename StepSolver>
SolveReport damped_newton(Eigen::VectorXd& u, Residual&& residual, StepSolver&& solve_step,
                          const NewtonSettings& settings) {
    SolveReport report;
    report.tolerance = settings.tolerance;
    Eigen::VectorXd r = residual(u);
    double norm = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
    int polish_left = settings.polish_steps;

    while (true) {
        if (norm <= settings.tolerance) {
            report.converged = true;
            if (polish_left-- <= 0) break;
        } else if (report.iterations >= settings.max_iter) {
            break;
        }
        std::optional<Eigen::VectorXd> step = solve_step(u, r);
        if (!step || !step->allFinite()) break;

        double lambda = report.converged ? 1.0 : settings.damping;
        bool accepted = false;
        bool halved = false;
        for (int k = 0; k <= settings.max_halvings; ++k) {
            Eigen::VectorXd trial = u + lambda * (*step);
            Eigen::VectorXd trial_r = residual(trial);
            const double trial_norm = trial_r.lpNorm<Eigen::Infinity>();
            if (std::isfinite(trial_norm) && trial_norm < norm) {
                u = std::move(trial);
                r = std::move(trial_r);
                norm = trial_norm;
                accepted = true;
                break;
            }
            if (report.converged) break;  // polishing never backtracks
            lambda *= 0.5;
            halved = true;
        }
        if (!report.converged) {
            ++report.iterations;
            if (halved) ++report.damping_events;
        }
        if (!accepted) break;
    }
    report.final_residual = norm;
    report.converged = norm <= settings.tolerance;
    return report;
}

}  // namespace painleve

#endif  // PAINLEVE_NEWTON_HPP
