#include "painleve/vortexfield.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "painleve/airy.hpp"
#include "painleve/newton.hpp"
#include "painleve/vortex_checks.hpp"

namespace painleve {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using RowMatrix = Field2D::Matrix;

// Interior unknowns are numbered row-major: k = (i-1) * (n2-2) + (j-1).
struct InteriorMap {
    Index n1, n2;
    Index m1() const { return n1 - 2; }
    Index m2() const { return n2 - 2; }
    Index size() const { return m1() * m2(); }
    Index operator()(Index i, Index j) const { return (i - 1) * m2() + (j - 1); }

    Eigen::VectorXd gather(const RowMatrix& full) const {
        Eigen::VectorXd u(size());
        for (Index i = 1; i + 1 < n1; ++i)
            u.segment((i - 1) * m2(), m2()) = full.row(i).segment(1, m2()).transpose();
        return u;
    }
    void scatter(const Eigen::VectorXd& u, RowMatrix& full) const {
        for (Index i = 1; i + 1 < n1; ++i)
            full.row(i).segment(1, m2()) = u.segment((i - 1) * m2(), m2()).transpose();
    }
};

// Linear part of the reduced operator,
//   y_x1x1 + y_ss + p/s y_s - p/s^2 y - x1 y,
// at interior nodes, written into `out` (boundary entries untouched).
void apply_linear(const Grid2D& g, int p, const RowMatrix& y, RowMatrix& out) {
    const double h1 = g.axis1.spacing();
    const double h2 = g.axis2.spacing();
    const double inv1 = 1.0 / (h1 * h1);
    const double inv2 = 1.0 / (h2 * h2);
    const Index n1 = y.rows();
    const Index n2 = y.cols();
    for (Index i = 1; i + 1 < n1; ++i) {
        const double x = g.axis1.node(i);
        for (Index j = 1; j + 1 < n2; ++j) {
            const double s = g.axis2.node(j);
            const double c = y(i, j);
            out(i, j) = (y(i - 1, j) - 2.0 * c + y(i + 1, j)) * inv1 + (y(i, j - 1) - 2.0 * c + y(i, j + 1)) * inv2 +
                        p / s * (y(i, j + 1) - y(i, j - 1)) / (2.0 * h2) - p / (s * s) * c - x * c;
        }
    }
}

// Sparse matrix of the linear part restricted to interior unknowns, plus `shift` on the diagonal.
SparseMatrix linear_matrix(const Grid2D& g, int p, const InteriorMap& map, const Eigen::VectorXd& shift) {
    const double h2 = g.axis2.spacing();
    const double inv1 = 1.0 / (g.axis1.spacing() * g.axis1.spacing());
    const double inv2 = 1.0 / (h2 * h2);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<size_t>(map.size()) * 5);
    for (Index i = 1; i + 1 < map.n1; ++i) {
        const double x = g.axis1.node(i);
        for (Index j = 1; j + 1 < map.n2; ++j) {
            const double s = g.axis2.node(j);
            const Index k = map(i, j);
            entries.emplace_back(k, k, -2.0 * inv1 - 2.0 * inv2 - p / (s * s) - x + shift[k]);
            if (i > 1) entries.emplace_back(k, map(i - 1, j), inv1);
            if (i + 2 < map.n1) entries.emplace_back(k, map(i + 1, j), inv1);
            if (j > 1) entries.emplace_back(k, map(i, j - 1), inv2 - p / (2.0 * s * h2));
            if (j + 2 < map.n2) entries.emplace_back(k, map(i, j + 1), inv2 + p / (2.0 * s * h2));
        }
    }
    SparseMatrix a(map.size(), map.size());
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

double edge_weight(double sigma_upper, double h2, int p) {
    if (p == 0) return 1.0;
    return std::pow(sigma_upper, p - 1) * (sigma_upper - 0.5 * p * h2);
}

}  // namespace

void VortexProblem::validate() const {
    if (n < 3) throw InvalidArgument("ambient dimension n must be at least 3");
    if (!(x1_min() < -4.0)) throw InvalidArgument("x1_min must be below -4");
    if (!(x1_max() > 4.0)) throw InvalidArgument("x1_max must exceed 4");
    if (grid.axis2.start() != 0.0) throw InvalidArgument("sigma axis must start at 0");
    if (!(sigma_max() > 8.0)) throw InvalidArgument("sigma_max must exceed 8");
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
    if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
    if (flow_steps < 0) throw InvalidArgument("flow_steps must be non-negative");
    if (flow_steps > 0 && !(flow_dt > 0.0)) throw InvalidArgument("flow_dt must be positive");
}

Field2D radial_residual_order(const Field2D& y, int p) {
    if (p < 0) throw InvalidArgument("radial order must be non-negative");
    RowMatrix out = RowMatrix::Zero(y.values().rows(), y.values().cols());
    apply_linear(y.grid(), p, y.values(), out);
    const auto& v = y.values();
    for (Index i = 1; i + 1 < v.rows(); ++i)
        for (Index j = 1; j + 1 < v.cols(); ++j) out(i, j) -= 2.0 * v(i, j) * v(i, j) * v(i, j);
    return Field2D(y.grid(), std::move(out));
}

Field2D radial_residual(const Field2D& y, int n) { return radial_residual_order(y, n - 2); }

BoundaryData assemble_boundary(const VortexProblem& problem, const Field1D& h, const Field1D& gl) {
    const Grid2D& g = problem.grid;
    const double depth = -problem.x1_min();
    const double r_needed = std::sqrt(depth) * problem.sigma_max();
    if (gl.grid().start() != 0.0 || gl.grid().end() < r_needed) {
        std::ostringstream os;
        os << "vortex profile reaches r = " << gl.grid().end() << " but the left edge needs r = " << r_needed;
        throw InsufficientCoverage(os.str());
    }
    if (h.grid().start() > problem.x1_min() || h.grid().end() < problem.x1_max()) {
        throw InsufficientCoverage("Hastings-McLeod profile does not cover [x1_min, x1_max]");
    }
    const Index n1 = g.axis1.count();
    const Index n2 = g.axis2.count();
    RowMatrix b = RowMatrix::Zero(n1, n2);
    const double amplitude = std::sqrt(depth / 2.0);
    for (Index j = 0; j < n2; ++j) b(0, j) = amplitude * interp_linear(gl, std::sqrt(depth) * g.axis2.node(j));
    for (Index j = 0; j < n2; ++j) b(n1 - 1, j) = 0.0;
    for (Index i = 0; i < n1; ++i) {
        b(i, 0) = 0.0;
        b(i, n2 - 1) = interp_linear(h, g.axis1.node(i));
    }
    const double mismatch = std::abs(b(0, n2 - 1) - amplitude * interp_linear(gl, r_needed));
    return {Field2D(g, std::move(b)), mismatch};
}

Field2D initial_guess(const VortexProblem& problem, const Field1D& h) {
    return Field2D::sample(problem.grid, [&](double x1, double sigma) {
        return interp_linear(h, x1) * std::tanh(sigma * std::sqrt(std::max(-x1, 1.0) / 2.0));
    });
}

RadialSolve solve_radial_bvp(const RadialBvp& bvp) {
    const Grid2D& g = bvp.grid;
    if (!(bvp.boundary.grid() == g) || !(bvp.guess.grid() == g)) {
        throw InvalidArgument("boundary data and guess must live on the problem grid");
    }
    if (bvp.order < 0) throw InvalidArgument("radial order must be non-negative");
    const InteriorMap map{g.axis1.count(), g.axis2.count()};
    const int p = bvp.order;

    RowMatrix full = bvp.boundary.values();
    Eigen::VectorXd u = map.gather(bvp.guess.values());
    map.scatter(u, full);

    SolveReport report;

    // Semi-implicit gradient flow: linear part implicit, cubic explicit, with a
    // stabilizing shift S >= max|d(2y^3)/dy| / 2 moved across:
    //   ((1/dt + S) I - L) y+ = (1/dt + S) y - 2 y^3.
    if (bvp.flow_steps > 0) {
        const double stab = 3.0 * u.cwiseAbs2().maxCoeff();
        const double diag = 1.0 / bvp.flow_dt + stab;
        const SparseMatrix lin = linear_matrix(g, p, map, Eigen::VectorXd::Zero(map.size()));
        SparseMatrix flow = -lin;
        for (Index k = 0; k < map.size(); ++k) flow.coeffRef(k, k) += diag;
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(flow);
        if (lu.info() != Eigen::Success) {
            report.tolerance = bvp.newton_tol;
            throw NoConvergence("gradient-flow matrix factorization failed", report);
        }
        // Boundary coupling of the linear operator: L applied to the boundary data alone.
        RowMatrix boundary_only = bvp.boundary.values();
        RowMatrix coupling = RowMatrix::Zero(full.rows(), full.cols());
        for (Index i = 1; i + 1 < map.n1; ++i) boundary_only.row(i).segment(1, map.m2()).setZero();
        apply_linear(g, p, boundary_only, coupling);
        const Eigen::VectorXd b = map.gather(coupling);
        for (int step = 0; step < bvp.flow_steps; ++step) {
            Eigen::VectorXd rhs = diag * u - 2.0 * u.cwiseProduct(u).cwiseProduct(u) + b;
            u = lu.solve(rhs);
            ++report.flow_steps;
        }
    }

    auto residual = [&](const Eigen::VectorXd& trial) {
        map.scatter(trial, full);
        RowMatrix out = RowMatrix::Zero(full.rows(), full.cols());
        apply_linear(g, p, full, out);
        Eigen::VectorXd r = map.gather(out);
        return Eigen::VectorXd(r - 2.0 * trial.cwiseProduct(trial).cwiseProduct(trial));
    };

    SparseMatrix jac = linear_matrix(g, p, map, Eigen::VectorXd::Zero(map.size()));
    const Eigen::VectorXd base_diag = jac.diagonal();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(jac);
    auto solve_step = [&](const Eigen::VectorXd& at, const Eigen::VectorXd& r) -> std::optional<Eigen::VectorXd> {
        for (Index k = 0; k < map.size(); ++k) jac.coeffRef(k, k) = base_diag[k] - 6.0 * at[k] * at[k];
        lu.factorize(jac);
        if (lu.info() != Eigen::Success) return std::nullopt;
        Eigen::VectorXd step = lu.solve(-r);
        if (lu.info() != Eigen::Success) return std::nullopt;
        return step;
    };

    NewtonSettings settings;
    settings.tolerance = bvp.newton_tol;
    settings.max_iter = bvp.max_iter;
    const SolveReport newton = damped_newton(u, residual, solve_step, settings);
    report.iterations = newton.iterations;
    report.final_residual = newton.final_residual;
    report.tolerance = newton.tolerance;
    report.converged = newton.converged;
    report.damping_events = newton.damping_events;
    if (!report.converged) {
        std::ostringstream os;
        os << "reduced vortex solve stalled at residual " << report.final_residual << " after "
           << report.iterations << " Newton iterations";
        throw NoConvergence(os.str(), report);
    }
    map.scatter(u, full);
    return {Field2D(g, std::move(full)), report};
}

HmProblem vortex_hm_problem(const VortexProblem& problem) {
    const Grid1D& ax = problem.grid.axis1;
    const int refine = static_cast<int>(std::ceil(ax.spacing() / 0.005 - 1e-9));
    const double fine = ax.spacing() / refine;
    const auto pad = [&](double length) {
        return static_cast<double>(std::ceil(std::max(4.0, length) / ax.spacing() - 1e-9)) * ax.spacing();
    };
    const double a = problem.x1_min() - pad(problem.x1_min() + 12.0);
    const double b = problem.x1_max() + pad(12.0 - problem.x1_max());
    HmProblem hm;
    hm.grid = build_grid1(a, b, static_cast<Index>(std::llround((b - a) / fine)) + 1);
    hm.newton_tol = 1e-10;
    return hm;
}

GlProblem vortex_gl_problem(const VortexProblem& problem) {
    GlProblem gl;
    gl.d = problem.n - 1;
    const double r_max = std::max(40.0, std::ceil(std::sqrt(-problem.x1_min()) * problem.sigma_max()) + 5.0);
    gl.grid = build_grid1(0.0, r_max, static_cast<Index>(std::llround(r_max / 0.005)) + 1);
    return gl;
}

VortexField solve_vortex(const VortexProblem& problem) {
    problem.validate();
    const HmSolution h = solve_hastings_mcleod(vortex_hm_problem(problem));
    const GlProfile eta = solve_gl_profile(vortex_gl_problem(problem));
    return solve_vortex(problem, h.h, eta.f);
}

VortexField solve_vortex(const VortexProblem& problem, const Field1D& h, const Field1D& gl) {
    problem.validate();
    const BoundaryData boundary = assemble_boundary(problem, h, gl);

    RowMatrix guess = initial_guess(problem, h).values();
    const auto& bv = boundary.values.values();
    const Index n1 = guess.rows();
    const Index n2 = guess.cols();
    guess.row(0) = bv.row(0);
    guess.row(n1 - 1) = bv.row(n1 - 1);
    guess.col(0) = bv.col(0);
    guess.col(n2 - 1) = bv.col(n2 - 1);

    RadialBvp bvp{problem.grid,
                  problem.n - 2,
                  boundary.values,
                  Field2D(problem.grid, std::move(guess)),
                  problem.newton_tol,
                  problem.max_iter,
                  problem.flow_steps,
                  problem.flow_dt};
    RadialSolve solved = solve_radial_bvp(bvp);
    solved.report.corner_mismatch = boundary.corner_mismatch;

    const Field1D h_used = Field1D::sample(problem.grid.axis1, [&](double x1) { return interp_linear(h, x1); });
    const auto fail = [&](const char* what, const Violation& v) {
        std::ostringstream os;
        os << what << " (worst " << v.worst << " at x1=" << v.x1 << ", sigma=" << v.sigma << ")";
        throw InvariantViolation(os.str(), v.x1, v.sigma, solved.report);
    };
    if (const Violation v = positivity_violation(solved.y); v.worst >= 0.0) fail("solution not strictly positive", v);
    if (const Violation v = amplitude_violation(solved.y, h_used); v.worst >= 0.0) fail("amplitude bound y < h violated", v);
    if (const Violation v = monotonicity_violation(solved.y); v.worst >= 0.0) fail("solution not monotone", v);

    return {std::move(solved.y), problem.n, solved.report, h_used, gl};
}

EnergyBreakdown energy_radial(const Field2D& y, int n) {
    const int p = n - 2;
    if (p < 0) throw InvalidArgument("energy needs n >= 2");
    const Grid2D& g = y.grid();
    const auto& v = y.values();
    const Eigen::VectorXd w1 = trapezoid_weights(g.axis1);
    const Eigen::VectorXd w2 = trapezoid_weights(g.axis2);
    const double h1 = g.axis1.spacing();
    const double h2 = g.axis2.spacing();
    EnergyBreakdown e;
    for (Index i = 0; i < v.rows(); ++i) {
        const double x = g.axis1.node(i);
        for (Index j = 0; j < v.cols(); ++j) {
            const double s = g.axis2.node(j);
            const double vol = p == 0 ? 1.0 : std::pow(s, p);
            const double c = v(i, j);
            const double y2 = c * c;
            if (i + 1 < v.rows()) {
                const double d = v(i + 1, j) - c;
                e.gradient += 0.5 * w2[j] * vol * d * d / h1;
            }
            if (j + 1 < v.cols()) {
                const double d = v(i, j + 1) - c;
                e.gradient += 0.5 * w1[i] * edge_weight(g.axis2.node(j + 1), h2, p) * d * d / h2;
            }
            const double w = w1[i] * w2[j] * vol;
            if (j > 0 && p > 0) e.centrifugal += w * p * y2 / (2.0 * s * s);
            e.linear_potential += w * x * y2 / 2.0;
            e.quartic_potential += w * y2 * y2 / 2.0;
        }
    }
    e.total = e.gradient + e.centrifugal + e.linear_potential + e.quartic_potential;
    return e;
}

Field2D sample_bump(const Grid2D& grid, const BumpSpec& bump) {
    const double r2 = bump.radius * bump.radius;
    return Field2D::sample(grid, [&](double x1, double sigma) {
        const double d2 = (x1 - bump.x1) * (x1 - bump.x1) + (sigma - bump.sigma) * (sigma - bump.sigma);
        const double t = std::max(0.0, 1.0 - d2 / r2);
        return bump.amplitude * t * t;
    });
}

double perturbation_energy_delta(const VortexField& field, const BumpSpec& bump) {
    const Grid2D& g = field.y.grid();
    const double h2 = g.axis2.spacing();
    if (!(bump.radius > 0.0) || !(bump.x1 - bump.radius > g.axis1.start()) ||
        !(bump.x1 + bump.radius < g.axis1.end()) || !(bump.sigma - bump.radius >= h2) ||
        !(bump.sigma + bump.radius < g.axis2.end())) {
        throw SupportViolation("bump support must stay inside the rectangle and at least one spacing above sigma = 0");
    }
    const int p = field.n - 2;
    const auto& v = field.y.values();
    const RowMatrix phi = sample_bump(g, bump).values();
    const Eigen::VectorXd w1 = trapezoid_weights(g.axis1);
    const Eigen::VectorXd w2 = trapezoid_weights(g.axis2);
    const double h1 = g.axis1.spacing();
    double delta = 0.0;
    for (Index i = 0; i < v.rows(); ++i) {
        const double x = g.axis1.node(i);
        for (Index j = 0; j < v.cols(); ++j) {
            const double s = g.axis2.node(j);
            const double vol = p == 0 ? 1.0 : std::pow(s, p);
            const double c = v(i, j);
            const double f = phi(i, j);
            // (a + b)^2 - a^2 = b (2a + b)
            if (i + 1 < v.rows()) {
                const double d = v(i + 1, j) - c;
                const double df = phi(i + 1, j) - f;
                if (df != 0.0) delta += 0.5 * w2[j] * vol * df * (2.0 * d + df) / h1;
            }
            if (j + 1 < v.cols()) {
                const double d = v(i, j + 1) - c;
                const double df = phi(i, j + 1) - f;
                if (df != 0.0) delta += 0.5 * w1[i] * edge_weight(g.axis2.node(j + 1), h2, p) * df * (2.0 * d + df) / h2;
            }
            if (f == 0.0) continue;
            const double w = w1[i] * w2[j] * vol;
            const double sq = f * (2.0 * c + f);  // (c+f)^2 - c^2
            const double quartic = sq * ((c + f) * (c + f) + c * c);
            double local = x * sq / 2.0 + quartic / 2.0;
            if (j > 0 && p > 0) local += p * sq / (2.0 * s * s);
            delta += w * local;
        }
    }
    return delta;
}

}  // namespace painleve
