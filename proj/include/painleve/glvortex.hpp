#ifndef PAINLEVE_GLVORTEX_HPP
#define PAINLEVE_GLVORTEX_HPP

// Radial profile of the standard Ginzburg-Landau vortex  Delta u = |u|^2 u - u  in R^d.
//
// For the equivariant field u(x) = f(|x|) x/|x| each component is f(r) x_k / r, and
//   Delta (f(r) x_k/r) = (f'' + (d-1)/r f' - (d-1)/r^2 f) x_k / r,
// since x_k/r is a degree-one spherical harmonic (eigenvalue (d-1) of the sphere
// Laplacian). With |u| = f the system collapses to the scalar ODE
//   f'' + (d-1)/r f' - (d-1)/r^2 f + f - f^3 = 0,   f(0) = 0,  f(inf) = 1.

#include "painleve/errors.hpp"
#include "painleve/grid.hpp"

namespace painleve {

struct GlProblem {
    int d = 2;
    Grid1D grid = build_grid1(0.0, 20.0, 4001);
    double newton_tol = 1e-10;
    int max_iter = 50;

    double r_max() const { return grid.end(); }
    /// Throws InvalidArgument unless d >= 2, the grid starts at 0 and r_max > 10.
    void validate() const;
};

struct GlProfile {
    Field1D f;
    SolveReport report;
};

/// Residual of the reduced ODE at interior nodes; the rows at r = 0 and r = r_max are 0.
Field1D gl_residual(const Field1D& f, int d);

/// 1 - (d-1)/(2 r^2), used as the Dirichlet value at r_max.
double gl_far_field(double r, int d);

/// Throws NoConvergence or InvariantViolation (profile not increasing / outside [0, 1)).
GlProfile solve_gl_profile(const GlProblem& problem);

/// eta_rad(r) by linear interpolation; throws OutOfDomain beyond r_max.
double gl_eval(const GlProfile& profile, double r);

}  // namespace painleve

#endif  // PAINLEVE_GLVORTEX_HPP
