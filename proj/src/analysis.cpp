#include "painleve/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "painleve/airy.hpp"
#include "painleve/vortex_checks.hpp"

namespace painleve {
namespace {

double stretch(double t1) {
    if (!(t1 < 0.0)) throw InvalidArgument("rescaling needs t1 < 0");
    return std::cbrt(-1.5 * t1);
}

CheckReport strict_report(std::string name, const Violation& v, std::string details) {
    CheckReport r;
    r.name = std::move(name);
    r.worst_violation = v.worst;
    r.worst_location = {v.x1, v.sigma};
    r.tolerance = 0.0;
    r.strict = true;
    r.passed = v.worst < 0.0;
    std::ostringstream os;
    os << details << "; failing nodes: " << v.count;
    r.details = os.str();
    return r;
}

}  // namespace

double rescaled_x1(double t1) {
    const double s = stretch(t1);
    return -s * s;
}

double rescaled_sigma(double t1, double tau) { return std::abs(tau) / stretch(t1); }

double rescaled_amplitude(double t1) { return std::numbers::sqrt2 / stretch(t1); }

Field1D rescale_field(const VortexField& field, double t1, double tau_max, Index count) {
    const double x1 = rescaled_x1(t1);
    const double amp = rescaled_amplitude(t1);
    const Grid1D tau = build_grid1(0.0, tau_max, count);
    return Field1D::sample(tau, [&](double t) { return amp * interp_bilinear(field.y, x1, rescaled_sigma(t1, t)); });
}

RescaledField rescale_slices(const VortexField& field, std::span<const double> t1_slices, double tau_max,
                             Index count) {
    RescaledField out{{t1_slices.begin(), t1_slices.end()}, build_grid1(0.0, tau_max, count), {}};
    for (double t1 : t1_slices) out.values.push_back(rescale_field(field, t1, tau_max, count));
    return out;
}

double gl_comparison_error(const Field1D& rescaled, const Field1D& gl) {
    double worst = 0.0;
    const auto& g = rescaled.grid();
    for (Index i = 0; i < g.count(); ++i) {
        worst = std::max(worst, std::abs(rescaled[i] - interp_linear(gl, g.node(i))));
    }
    return worst;
}

double gl_comparison_error(const Field1D& rescaled, const GlProfile& gl) {
    return gl_comparison_error(rescaled, gl.f);
}

CheckReport check_positivity(const VortexField& field) {
    const double min_sigma = 2.0 * field.y.grid().axis2.spacing() * (1.0 - 1e-12);
    return strict_report("positivity", positivity_violation(field.y, min_sigma),
                         "y > 0 at interior nodes with sigma >= 2 spacing; worst is max(-y)");
}

CheckReport check_amplitude_bound(const VortexField& field, const Field1D& h) {
    return strict_report("amplitude_bound", amplitude_violation(field.y, h),
                         "y < h(x1) at nodes with sigma < sigma_max; worst is max(y - h)");
}

CheckReport check_monotonicity(const VortexField& field) {
    const Violation dx = x1_decrease_violation(field.y);
    const Violation ds = sigma_increase_violation(field.y);
    const Violation& worse = dx.worst >= ds.worst ? dx : ds;
    Violation merged = worse;
    merged.count = dx.count + ds.count;
    std::ostringstream os;
    os << "forward differences: max dy/dx1 step " << dx.worst << " (" << dx.count << " failing), max -dy/dsigma step "
       << ds.worst << " (" << ds.count << " failing)";
    return strict_report("monotonicity", merged, os.str());
}

Field1D sigma_trace(const VortexField& field, double sigma_ref) {
    const Grid1D& ax = field.y.grid().axis1;
    return Field1D::sample(ax, [&](double x1) { return interp_bilinear(field.y, x1, sigma_ref); });
}

double fit_decay_rate(const Field1D& trace, double a, double b) {
    const Grid1D& g = trace.grid();
    if (!(a >= 3.0 && a < b && b <= g.end() - 1.0 && a >= g.start())) {
        std::ostringstream os;
        os << "decay window [" << a << ", " << b << "] must lie in [3, " << g.end() - 1.0 << "]";
        throw InvalidArgument(os.str());
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    Index count = 0;
    for (Index i = 0; i < g.count(); ++i) {
        const double x = g.node(i);
        if (x < a || x > b) continue;
        if (!(trace[i] > 0.0)) {
            std::ostringstream os;
            os << "trace is not positive at x = " << x << " (value " << trace[i] << ")";
            throw InvalidArgument(os.str());
        }
        const double s = -2.0 / 3.0 * x * std::sqrt(x);
        const double l = std::log(trace[i]);
        sx += s;
        sy += l;
        sxx += s * s;
        sxy += s * l;
        ++count;
    }
    if (count < 2) throw InvalidArgument("decay window holds fewer than two nodes");
    const double nn = static_cast<double>(count);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

CheckReport check_hm_asymptotics(const Field1D& h) {
    const double right = std::abs(interp_linear(h, 5.0) / airy_ai(5.0).value - 1.0);
    const double left = std::abs(interp_linear(h, -10.0) / hm_left_asymptote(-10.0) - 1.0);
    CheckReport r;
    r.name = "hm_asymptotics";
    r.strict = true;
    r.tolerance = 0.0;
    // Normalized so that a pass means both margins are negative.
    const double right_margin = right / 5e-3 - 1.0;
    const double left_margin = left / 1e-3 - 1.0;
    r.worst_violation = std::max(right_margin, left_margin);
    r.worst_location = right_margin >= left_margin ? std::array<double, 2>{5.0, 0.0} : std::array<double, 2>{-10.0, 0.0};
    r.passed = right < 5e-3 && left < 1e-3;
    std::ostringstream os;
    os << "|h(5)/Ai(5) - 1| = " << right << " (limit 5e-3), |h(-10)/left asymptote - 1| = " << left
       << " (limit 1e-3); worst is the larger relative excess";
    r.details = os.str();
    return r;
}

CheckReport check_hm_asymptotics(const HmSolution& h) { return check_hm_asymptotics(h.h); }

CheckReport verify_slab_equals_h(const VortexProblem& problem, const Field1D& h_reference, SlabBottom bottom) {
    const Grid2D& g = problem.grid;
    if (g.axis2.start() != 0.0) throw InvalidArgument("slab sigma axis must start at 0");

    HmProblem coarse;
    coarse.grid = g.axis1;
    coarse.newton_tol = 1e-12;
    coarse.boundary_values = std::array<double, 2>{interp_linear(h_reference, g.axis1.start()),
                                                   interp_linear(h_reference, g.axis1.end())};
    const Field1D h = solve_hastings_mcleod(coarse).h;

    const Index n1 = g.axis1.count();
    const Index n2 = g.axis2.count();
    const double top = g.axis2.end();
    Field2D::Matrix boundary(n1, n2);
    Field2D::Matrix guess(n1, n2);
    for (Index i = 0; i < n1; ++i) {
        for (Index j = 0; j < n2; ++j) {
            const double s = g.axis2.node(j);
            boundary(i, j) = h[i];
            // Nonnegative, below h, and far from sigma-independent.
            guess(i, j) = h[i] * (1.0 - 0.5 * std::sin(std::numbers::pi * s / top));
        }
        if (bottom == SlabBottom::zero) {
            boundary(i, 0) = 0.0;
            guess(i, 0) = 0.0;
        }
    }
    if (bottom == SlabBottom::zero) {
        for (Index j = 0; j < n2; ++j) {
            const double s = g.axis2.node(j);
            guess(0, j) = boundary(0, j) = h[0] * std::tanh(s * std::sqrt(-g.axis1.start() / 2.0));
        }
    }

    RadialBvp bvp{g,
                  0,
                  Field2D(g, boundary),
                  Field2D(g, guess),
                  problem.newton_tol,
                  problem.max_iter,
                  problem.flow_steps,
                  problem.flow_dt};
    const RadialSolve solved = solve_radial_bvp(bvp);

    Violation v;
    v.worst = 0.0;
    for (Index i = 0; i < n1; ++i) {
        for (Index j = 0; j < n2; ++j) {
            const double dev = std::abs(solved.y(i, j) - h[i]);
            if (dev > v.worst) {
                v.worst = dev;
                v.x1 = g.axis1.node(i);
                v.sigma = g.axis2.node(j);
            }
        }
    }
    CheckReport r;
    r.name = bottom == SlabBottom::h ? "slab_equals_h" : "slab_equals_h_zero_bottom";
    r.tolerance = 10.0 * problem.newton_tol;
    r.strict = true;
    r.worst_violation = v.worst;
    r.worst_location = {v.x1, v.sigma};
    r.passed = v.worst < r.tolerance;
    std::ostringstream os;
    os << "sup |y - h| over the slab; Newton residual " << solved.report.final_residual << " after "
       << solved.report.iterations << " iterations";
    r.details = os.str();
    return r;
}

double verify_1d_vector_direction(const Field1D& h, std::array<double, 2> unit) {
    const double norm = std::hypot(unit[0], unit[1]);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os << "direction (" << unit[0] << ", " << unit[1] << ") is not a unit vector";
        throw InvalidArgument(os.str());
    }
    // The stencil runs in quad precision: in double, rounding of h * unit alone shifts
    // the residual by ~1e-11 and would mask the rotation invariance being checked.
    using quad = __float128;
    const Grid1D& g = h.grid();
    const quad inv_h2 = 1 / (quad(g.spacing()) * quad(g.spacing()));
    double worst = 0.0;
    for (Index i = 1; i + 1 < g.count(); ++i) {
        const quad x = g.node(i);
        std::array<quad, 2> y0{}, y1{}, y2{}, r{};
        quad mod2 = 0;
        for (int k = 0; k < 2; ++k) {
            y0[k] = quad(h[i - 1]) * unit[k];
            y1[k] = quad(h[i]) * unit[k];
            y2[k] = quad(h[i + 1]) * unit[k];
            mod2 += y1[k] * y1[k];
        }
        quad norm2 = 0;
        for (int k = 0; k < 2; ++k) {
            r[k] = (y0[k] - 2 * y1[k] + y2[k]) * inv_h2 - x * y1[k] - 2 * mod2 * y1[k];
            norm2 += r[k] * r[k];
        }
        worst = std::max(worst, std::sqrt(static_cast<double>(norm2)));
    }
    return worst;
}

}  // namespace painleve

namespace painleve {

std::vector<BumpSpec> random_admissible_bumps(const Grid2D& grid, int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double h2 = grid.axis2.spacing();
    const double margin = 0.5 * std::max(grid.axis1.spacing(), h2);
    std::vector<BumpSpec> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        BumpSpec b;
        b.radius = 0.3 + 1.7 * unit(rng);
        const double lo1 = grid.axis1.start() + b.radius + margin;
        const double hi1 = grid.axis1.end() - b.radius - margin;
        const double lo2 = b.radius + h2;
        const double hi2 = grid.axis2.end() - b.radius - margin;
        b.x1 = lo1 + (hi1 - lo1) * unit(rng);
        b.sigma = lo2 + (hi2 - lo2) * unit(rng);
        const double magnitude = std::exp(std::log(1e-3) + (std::log(0.5) - std::log(1e-3)) * unit(rng));
        b.amplitude = unit(rng) < 0.5 ? -magnitude : magnitude;
        if (hi1 > lo1 && hi2 > lo2) out.push_back(b);
    }
    return out;
}

CheckReport check_minimality(const VortexField& field, std::span<const BumpSpec> bumps) {
    CheckReport r;
    r.name = "minimality";
    r.strict = true;
    r.worst_violation = -std::numeric_limits<double>::infinity();
    int failures = 0;
    double smallest_ratio = std::numeric_limits<double>::infinity();
    for (const BumpSpec& b : bumps) {
        const double delta = perturbation_energy_delta(field, b);
        if (!(delta > 0.0)) ++failures;
        if (-delta > r.worst_violation) {
            r.worst_violation = -delta;
            r.worst_location = {b.x1, b.sigma};
        }
        smallest_ratio = std::min(smallest_ratio, delta / (b.amplitude * b.amplitude));
    }
    r.passed = failures == 0 && !bumps.empty();
    std::ostringstream os;
    os << bumps.size() << " bumps, " << failures << " with E(y+phi) - E(y) <= 0; smallest delta/amplitude^2 "
       << smallest_ratio;
    r.details = os.str();
    return r;
}

CheckReport check_rescaled_limit(const VortexField& field, std::span<const double> t1_slices, double tau_max,
                                 Index count, double limit) {
    CheckReport r;
    r.name = "rescaled_gl_limit";
    r.strict = true;
    std::ostringstream os;
    bool monotone = true;
    double previous = std::numeric_limits<double>::infinity();
    double last = 0.0;
    double worst_increase = -std::numeric_limits<double>::infinity();
    for (double t1 : t1_slices) {
        const double err = gl_comparison_error(rescale_field(field, t1, tau_max, count), field.gl_used);
        os << "t1=" << t1 << ": " << err << "; ";
        if (std::isfinite(previous)) worst_increase = std::max(worst_increase, err - previous);
        if (err > previous) monotone = false;
        previous = err;
        last = err;
    }
    r.tolerance = limit;
    r.worst_violation = last;
    r.worst_location = {t1_slices.empty() ? 0.0 : t1_slices.back(), 0.0};
    r.passed = monotone && !t1_slices.empty() && last < limit;
    os << "nonincreasing: " << (monotone ? "yes" : "no") << " (largest step " << worst_increase << ")";
    r.details = os.str();
    return r;
}

CheckReport check_decay(const std::string& name, const Field1D& trace, double a, double b, double rel_tol) {
    const double slope = fit_decay_rate(trace, a, b);
    CheckReport r;
    r.name = name;
    r.strict = true;
    r.tolerance = rel_tol;
    r.worst_violation = std::abs(slope - 1.0);
    r.worst_location = {a, b};
    r.passed = r.worst_violation < rel_tol;
    std::ostringstream os;
    os << "fitted slope " << slope << " over [" << a << ", " << b << "]";
    r.details = os.str();
    return r;
}

CheckReport check_corner_mismatch(const VortexField& field, double limit) {
    CheckReport r;
    r.name = "corner_mismatch";
    r.strict = true;
    r.tolerance = limit;
    r.worst_violation = field.report.corner_mismatch;
    r.worst_location = {field.y.grid().axis1.start(), field.y.grid().axis2.end()};
    r.passed = r.worst_violation < limit;
    r.details = "|h(x1_min) - rescaled vortex profile| at the upper left corner";
    return r;
}

}  // namespace painleve
