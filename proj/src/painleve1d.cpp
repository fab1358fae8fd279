#include "painleve/painleve1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "painleve/airy.hpp"
#include "painleve/newton.hpp"

namespace painleve {

void HmProblem::validate() const {
    if (!(x_min() < -4.0)) throw InvalidArgument("x_min must be below -4");
    if (!(x_max() > 4.0)) throw InvalidArgument("x_max must exceed 4");
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
    if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
    if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("damping must lie in (0, 1]");
}

double hm_left_asymptote(double x, bool corrected) {
    if (!(x < 0.0)) throw InvalidArgument("hm_left_asymptote needs x < 0");
    const double lead = std::sqrt(-x / 2.0);
    return corrected ? lead * (1.0 + 1.0 / (8.0 * x * x * x)) : lead;
}

Field1D hm_residual(const Field1D& y) {
    const auto& g = y.grid();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const auto& v = y.values();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(v.size());
    for (Index i = 1; i + 1 < v.size(); ++i) {
        const double x = g.node(i);
        r[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv_h2 - x * v[i] - 2.0 * v[i] * v[i] * v[i];
    }
    return Field1D(g, std::move(r));
}

Field1D hm_initial_guess(const Grid1D& grid) {
    static constexpr double delta = 0.25;
    return Field1D::sample(grid, [](double x) {
        const double branch = std::sqrt(std::max(-x, delta) / 2.0);
        if (x <= 2.0) return branch;
        const double w = std::min((x - 2.0) / 2.0, 1.0);
        return (1.0 - w) * branch + w * airy_ai(x).value;
    });
}

HmSolution solve_hastings_mcleod(const HmProblem& problem) {
    problem.validate();
    const Grid1D& g = problem.grid;
    const Index n = g.count();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

    Eigen::VectorXd y = hm_initial_guess(g).values();
    if (problem.boundary_values) {
        y[0] = (*problem.boundary_values)[0];
        y[n - 1] = (*problem.boundary_values)[1];
    } else {
        y[0] = hm_left_asymptote(g.start(), problem.corrected_left_bc);
        y[n - 1] = airy_ai(g.end()).value;
    }
    const double left = y[0];
    const double right = y[n - 1];

    const Index m = n - 2;
    auto expand = [&](const Eigen::VectorXd& u) {
        Eigen::VectorXd full(n);
        full[0] = left;
        full.segment(1, m) = u;
        full[n - 1] = right;
        return full;
    };
    auto residual = [&](const Eigen::VectorXd& u) {
        const Eigen::VectorXd full = expand(u);
        return Eigen::VectorXd(hm_residual(Field1D(g, full)).values().segment(1, m));
    };
    auto solve_step = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& r) -> std::optional<Eigen::VectorXd> {
        Eigen::VectorXd lower = Eigen::VectorXd::Constant(m, inv_h2);
        Eigen::VectorXd upper = Eigen::VectorXd::Constant(m, inv_h2);
        Eigen::VectorXd diag(m);
        for (Index k = 0; k < m; ++k) diag[k] = -2.0 * inv_h2 - g.node(k + 1) - 6.0 * u[k] * u[k];
        Eigen::VectorXd rhs = -r;
        if (!solve_tridiagonal<double>(lower, diag, upper, rhs)) return std::nullopt;
        return rhs;
    };

    Eigen::VectorXd u = y.segment(1, m);
    NewtonSettings settings;
    settings.tolerance = problem.newton_tol;
    settings.max_iter = problem.max_iter;
    settings.damping = problem.damping;
    const SolveReport report = damped_newton(u, residual, solve_step, settings);
    if (!report.converged) {
        std::ostringstream os;
        os << "Hastings-McLeod solve stalled at residual " << report.final_residual << " after "
           << report.iterations << " iterations";
        throw NoConvergence(os.str(), report);
    }

    Field1D h(g, expand(u));
    for (Index i = 0; i < n; ++i) {
        if (!(h[i] > 0.0)) throw InvariantViolation("h not strictly positive", g.node(i), 0.0, report);
        if (i > 0 && !(h[i] < h[i - 1])) {
            throw InvariantViolation("h not strictly decreasing (wrong branch)", g.node(i), 0.0, report);
        }
    }
    return {std::move(h), report};
}

}  // namespace painleve
