#ifndef PAINLEVE_VORTEXFIELD_HPP
#define PAINLEVE_VORTEXFIELD_HPP

// Equivariant solutions y(x) = y_rad(x1, sigma) z/|z| of
//   Delta y - x1 y - 2 |y|^2 y = 0   in R^n,   sigma = |z|, z = (x2, ..., xn).
//
// The ansatz reduces the system to one scalar PDE on the half plane sigma >= 0:
//   y_x1x1 + y_ss + p/sigma y_s - p/sigma^2 y - x1 y - 2 y^3 = 0,   p = n - 2,
// with the matching energy density weighted by the cylindrical volume element sigma^p:
//   [ |grad y|^2 / 2 + p y^2/(2 sigma^2) + x1 y^2 / 2 + y^4 / 2 ] sigma^p.
//
// The infinite problem is truncated to [x1_min, x1_max] x [0, sigma_max] with
// Dirichlet data: 0 on sigma = 0 (odd extension), h(x1) on sigma = sigma_max,
// the rescaled Ginzburg-Landau vortex on x1 = x1_min, and 0 on x1 = x1_max.

#include <array>
#include <optional>

#include "painleve/errors.hpp"
#include "painleve/glvortex.hpp"
#include "painleve/grid.hpp"
#include "painleve/painleve1d.hpp"

namespace painleve {

struct VortexProblem {
    int n = 3;
    Grid2D grid{build_grid1(-8.0, 8.0, 321), build_grid1(0.0, 12.0, 241)};
    double newton_tol = 1e-8;
    int max_iter = 50;
    int flow_steps = 200;
    double flow_dt = 0.1;

    double x1_min() const { return grid.axis1.start(); }
    double x1_max() const { return grid.axis1.end(); }
    double sigma_max() const { return grid.axis2.end(); }
    /// Throws InvalidArgument unless n >= 3, x1_min < -4, x1_max > 4, sigma in [0, sigma_max > 8].
    void validate() const;
};

struct VortexField {
    Field2D y;
    int n;
    SolveReport report;
    /// Hastings-McLeod solution sampled on the x1 axis.
    Field1D h_used;
    /// Vortex profile eta_rad for d = n - 1 on its own radial grid.
    Field1D gl_used;
};

struct EnergyBreakdown {
    double gradient = 0.0;
    double centrifugal = 0.0;
    double linear_potential = 0.0;
    double quartic_potential = 0.0;
    double total = 0.0;
};

/// Radial bump  amplitude * max(0, 1 - dist^2/radius^2)^2  centred at (x1, sigma).
struct BumpSpec {
    double x1;
    double sigma;
    double radius;
    double amplitude;
};

struct BoundaryData {
    /// Boundary nodes hold the Dirichlet data; interior nodes are 0.
    Field2D values;
    /// |h(x1_min) - sqrt(-x1_min/2) eta_rad(sqrt(-x1_min) sigma_max)| at the upper left corner.
    double corner_mismatch;
};

/// Five-point residual of the reduced PDE with p = n - 2 at interior nodes, 0 on the boundary.
Field2D radial_residual(const Field2D& y, int n);

/// Same operator with an arbitrary radial order p >= 0 (p = 0 is the plain planar PDE).
Field2D radial_residual_order(const Field2D& y, int p);

/// Dirichlet data on the four edges. The two upper corners take the top-edge value h.
/// Throws InsufficientCoverage when gl does not reach sqrt(-x1_min) * sigma_max, or h
/// does not cover [x1_min, x1_max].
BoundaryData assemble_boundary(const VortexProblem& problem, const Field1D& h, const Field1D& gl);

/// h(x1) tanh(sigma sqrt(max(-x1, 1)/2)), before projection onto the boundary data.
Field2D initial_guess(const VortexProblem& problem, const Field1D& h);

/// Generic Dirichlet problem for the reduced operator of radial order p.
struct RadialBvp {
    Grid2D grid;
    int order;
    /// Boundary nodes of `boundary` are imposed; interior nodes of `guess` start the iteration.
    Field2D boundary;
    Field2D guess;
    double newton_tol = 1e-8;
    int max_iter = 50;
    int flow_steps = 200;
    double flow_dt = 0.1;
};

struct RadialSolve {
    Field2D y;
    SolveReport report;
};

/// Semi-implicit gradient flow followed by damped Newton with a sparse LU Jacobian.
/// Throws NoConvergence.
RadialSolve solve_radial_bvp(const RadialBvp& bvp);

/// Hastings-McLeod problem backing a vortex solve: spacing at most 0.005 and a
/// refinement of the x1 axis, extended past [x1_min, x1_max] by at least 4 and out to +-12.
HmProblem vortex_hm_problem(const VortexProblem& problem);

/// Vortex profile problem (d = n - 1) reaching past sqrt(-x1_min) * sigma_max, spacing 0.005.
GlProblem vortex_gl_problem(const VortexProblem& problem);

/// Solves the Hastings-McLeod and Ginzburg-Landau profiles, assembles the data and solves.
/// Throws NoConvergence or InvariantViolation (positivity, amplitude bound, monotonicity).
VortexField solve_vortex(const VortexProblem& problem);

/// Same as above with precomputed 1D profiles.
VortexField solve_vortex(const VortexProblem& problem, const Field1D& h, const Field1D& gl);

/// Reduced energy with the sigma^(n-2) cylindrical weight. Nodal terms use the
/// tensor trapezoid rule; the gradient term uses one-sided differences on cell
/// edges so that d(total)/d(y_ij) = -w_ij sigma_j^(n-2) radial_residual(y)_ij exactly
/// for n = 3 and n = 4 (up to O(spacing^2) otherwise).
EnergyBreakdown energy_radial(const Field2D& y, int n);

/// E(y + phi) - E(y) for the bump phi, evaluated term by term without cancellation
/// against the full energy. Throws SupportViolation if the bump reaches the boundary
/// or comes within one spacing of sigma = 0.
double perturbation_energy_delta(const VortexField& field, const BumpSpec& bump);

/// The bump sampled on the field's grid.
Field2D sample_bump(const Grid2D& grid, const BumpSpec& bump);

}  // namespace painleve

#endif  // PAINLEVE_VORTEXFIELD_HPP
