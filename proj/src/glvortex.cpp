#include "painleve/glvortex.hpp"

#include <cmath>
#include <sstream>

#include "painleve/newton.hpp"

namespace painleve {

void GlProblem::validate() const {
    if (d < 2) throw InvalidArgument("vortex dimension d must be at least 2");
    if (grid.start() != 0.0) throw InvalidArgument("profile grid must start at r = 0");
    if (!(r_max() > 10.0)) throw InvalidArgument("r_max must exceed 10");
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
    if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

Field1D gl_residual(const Field1D& f, int d) {
    const auto& g = f.grid();
    const double h = g.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double c = d - 1.0;
    const auto& v = f.values();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(v.size());
    for (Index i = 1; i + 1 < v.size(); ++i) {
        const double rad = g.node(i);
        r[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv_h2 + c / rad * (v[i + 1] - v[i - 1]) / (2.0 * h) -
               c / (rad * rad) * v[i] + v[i] - v[i] * v[i] * v[i];
    }
    return Field1D(g, std::move(r));
}

double gl_far_field(double r, int d) {
    if (!(r > 0.0)) throw InvalidArgument("gl_far_field needs r > 0");
    return 1.0 - (d - 1.0) / (2.0 * r * r);
}

GlProfile solve_gl_profile(const GlProblem& problem) {
    problem.validate();
    const Grid1D& g = problem.grid;
    const Index n = g.count();
    const Index m = n - 2;
    const double h = g.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double c = problem.d - 1.0;
    const double right = gl_far_field(g.end(), problem.d);

    auto expand = [&](const Eigen::VectorXd& u) {
        Eigen::VectorXd full(n);
        full[0] = 0.0;
        full.segment(1, m) = u;
        full[n - 1] = right;
        return full;
    };
    auto residual = [&](const Eigen::VectorXd& u) {
        return Eigen::VectorXd(gl_residual(Field1D(g, expand(u)), problem.d).values().segment(1, m));
    };
    auto solve_step = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& r) -> std::optional<Eigen::VectorXd> {
        Eigen::VectorXd lower(m), diag(m), upper(m);
        for (Index k = 0; k < m; ++k) {
            const double rad = g.node(k + 1);
            lower[k] = inv_h2 - c / (2.0 * h * rad);
            upper[k] = inv_h2 + c / (2.0 * h * rad);
            diag[k] = -2.0 * inv_h2 - c / (rad * rad) + 1.0 - 3.0 * u[k] * u[k];
        }
        Eigen::VectorXd rhs = -r;
        if (!solve_tridiagonal<double>(lower, diag, upper, rhs)) return std::nullopt;
        return rhs;
    };

    Eigen::VectorXd u(m);
    for (Index k = 0; k < m; ++k) u[k] = std::tanh(g.node(k + 1) / std::sqrt(2.0));

    NewtonSettings settings;
    settings.tolerance = problem.newton_tol;
    settings.max_iter = problem.max_iter;
    const SolveReport report = damped_newton(u, residual, solve_step, settings);
    if (!report.converged) {
        std::ostringstream os;
        os << "vortex profile solve stalled at residual " << report.final_residual << " after "
           << report.iterations << " iterations";
        throw NoConvergence(os.str(), report);
    }

    Field1D f(g, expand(u));
    for (Index i = 1; i < n; ++i) {
        if (!(f[i] > f[i - 1])) throw InvariantViolation("profile not strictly increasing", g.node(i), 0.0, report);
        if (i + 1 < n && !(f[i] >= 0.0 && f[i] < 1.0)) {
            throw InvariantViolation("profile leaves [0, 1)", g.node(i), 0.0, report);
        }
    }
    return {std::move(f), report};
}

double gl_eval(const GlProfile& profile, double r) { return interp_linear(profile.f, r); }

}  // namespace painleve
