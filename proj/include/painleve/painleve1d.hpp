#ifndef PAINLEVE_PAINLEVE1D_HPP
#define PAINLEVE_PAINLEVE1D_HPP

// Hastings-McLeod solution h of Painleve II,  h'' = x h + 2 h^3,
// positive and decreasing, h ~ sqrt(-x/2) as x -> -inf and h ~ Ai(x) as x -> +inf.

#include <array>
#include <optional>

#include "painleve/errors.hpp"
#include "painleve/grid.hpp"

namespace painleve {

struct HmProblem {
    Grid1D grid = build_grid1(-12.0, 12.0, 4801);
    double newton_tol = 1e-10;
    int max_iter = 50;
    double damping = 1.0;
    /// Left boundary from sqrt(-x/2)(1 + 1/(8x^3)); false uses sqrt(-x/2) alone.
    bool corrected_left_bc = true;
    /// Replaces the asymptotic Dirichlet data with explicit {left, right} values.
    std::optional<std::array<double, 2>> boundary_values;

    double x_min() const { return grid.start(); }
    double x_max() const { return grid.end(); }
    /// Throws InvalidArgument unless x_min < -4 < 4 < x_max, tolerances positive, damping in (0,1].
    void validate() const;
};

struct HmSolution {
    Field1D h;
    SolveReport report;
};

/// sqrt(-x/2) * (1 + 1/(8 x^3)) for x < 0 (leading factor only when `corrected` is false).
double hm_left_asymptote(double x, bool corrected = true);

/// r_i = y''_i - x_i y_i - 2 y_i^3 at interior nodes; 0 on the two boundary nodes.
Field1D hm_residual(const Field1D& y);

/// Starting iterate: sqrt(max(-x, 0.25)/2) ramped linearly into Ai(x) over [2, 4].
Field1D hm_initial_guess(const Grid1D& grid);

/// Damped Newton on the discretized ODE with Dirichlet data h(x_min) = hm_left_asymptote(x_min),
/// h(x_max) = Ai(x_max).
/// Throws NoConvergence after max_iter, InvariantViolation if the result is not
/// strictly positive and strictly decreasing.
HmSolution solve_hastings_mcleod(const HmProblem& problem);

}  // namespace painleve

#endif  // PAINLEVE_PAINLEVE1D_HPP
