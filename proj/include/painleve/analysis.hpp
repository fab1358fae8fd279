#ifndef PAINLEVE_ANALYSIS_HPP
#define PAINLEVE_ANALYSIS_HPP

// Numerical checks of the structural properties of the computed profiles:
// bounds, monotonicity, decay, asymptotics, the Ginzburg-Landau limit of the
// rescaled field, and the scalar/1D characterizations of minimal solutions.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "painleve/glvortex.hpp"
#include "painleve/grid.hpp"
#include "painleve/painleve1d.hpp"
#include "painleve/vortexfield.hpp"

namespace painleve {

/// Outcome of one property check. When `strict`, passed <=> worst_violation < tolerance,
/// otherwise passed <=> worst_violation <= tolerance.
struct CheckReport {
    std::string name;
    bool passed = false;
    double worst_violation = 0.0;
    std::array<double, 2> worst_location{0.0, 0.0};
    std::string details;
    double tolerance = 0.0;
    bool strict = false;
};

// Rescaling near x1 -> -inf with z = 0:
//   x1 = -(-3/2 t1)^(2/3),  sigma = (-3/2 t1)^(-1/3) |tau|,
//   y~(t1, tau) = sqrt(2) (-3/2 t1)^(-1/3) y(x1, sigma).
double rescaled_x1(double t1);
double rescaled_sigma(double t1, double tau);
double rescaled_amplitude(double t1);

struct RescaledField {
    std::vector<double> t1_slices;
    Grid1D tau_grid;
    std::vector<Field1D> values;
};

/// y~(t1, .) on a uniform tau grid over [0, tau_max]. Throws InvalidArgument for t1 >= 0
/// and OutOfDomain when a mapped point leaves the rectangle.
Field1D rescale_field(const VortexField& field, double t1, double tau_max, Index count);

RescaledField rescale_slices(const VortexField& field, std::span<const double> t1_slices, double tau_max,
                             Index count);

/// sup over the tau grid of |y~(t1, tau) - eta_rad(tau)|.
double gl_comparison_error(const Field1D& rescaled, const Field1D& gl);
double gl_comparison_error(const Field1D& rescaled, const GlProfile& gl);

CheckReport check_positivity(const VortexField& field);
/// Strict bound y(x1, sigma) < h(x1) at every node with sigma < sigma_max.
CheckReport check_amplitude_bound(const VortexField& field, const Field1D& h);
/// dy/dx1 < 0 and dy/dsigma > 0 (forward differences) at interior nodes with sigma >= 2 spacing.
CheckReport check_monotonicity(const VortexField& field);

/// x1 -> y(x1, sigma_ref), interpolated in sigma.
Field1D sigma_trace(const VortexField& field, double sigma_ref);

/// Least-squares slope of log y against -(2/3) x^(3/2) over the nodes in [a, b].
/// Requires 3 <= a < b <= trace end - 1; throws InvalidArgument on a nonpositive trace.
double fit_decay_rate(const Field1D& trace, double a, double b);

/// |h(5)/Ai(5) - 1| < 5e-3 and |h(-10)/hm_left_asymptote(-10) - 1| < 1e-3.
CheckReport check_hm_asymptotics(const Field1D& h);
CheckReport check_hm_asymptotics(const HmSolution& h);

enum class SlabBottom { h, zero };

/// Planar (no centrifugal, no radial weight) Dirichlet problem on the rectangle with
/// h on the top edge and on the bottom edge (or 0 there when `bottom` is zero).
/// h is first resolved on the rectangle's own x1 axis, taking its end values from
/// `h_reference`, so the sigma-independent field is an exact discrete solution.
/// Passes when sup |y - h| < 10 * newton_tol.
CheckReport verify_slab_equals_h(const VortexProblem& problem, const Field1D& h_reference,
                                 SlabBottom bottom = SlabBottom::h);

/// Sup over nodes of the Euclidean norm of the two-component residual
///   y'' - x y - 2 |y|^2 y  for  y(x) = h(x) * unit.
/// Throws InvalidArgument if | |unit| - 1 | > 1e-12.
double verify_1d_vector_direction(const Field1D& h, std::array<double, 2> unit);

/// `count` bumps with support inside the rectangle and at least one spacing above sigma = 0.
/// Radii in [0.3, 2], |amplitude| log-uniform in [1e-3, 0.5] with random sign; deterministic in `seed`.
std::vector<BumpSpec> random_admissible_bumps(const Grid2D& grid, int count, unsigned long long seed);

/// Passes when every bump raises the energy; worst is max(-delta).
CheckReport check_minimality(const VortexField& field, std::span<const BumpSpec> bumps);

/// gl_comparison_error over the slices must be nonincreasing (slices ordered toward -inf)
/// and below `limit` on the last slice.
CheckReport check_rescaled_limit(const VortexField& field, std::span<const double> t1_slices, double tau_max,
                                 Index count, double limit);

/// |fit_decay_rate(trace, a, b) - 1| < rel_tol.
CheckReport check_decay(const std::string& name, const Field1D& trace, double a, double b, double rel_tol);

/// Corner mismatch recorded by the solve against `limit`.
CheckReport check_corner_mismatch(const VortexField& field, double limit);

}  // namespace painleve

#endif  // PAINLEVE_ANALYSIS_HPP
