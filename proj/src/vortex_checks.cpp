#include "painleve/vortex_checks.hpp"

namespace painleve {
namespace {

void record(Violation& v, double value, double x1, double sigma) {
    if (value >= 0.0) ++v.count;
    if (value > v.worst) {
        v.worst = value;
        v.x1 = x1;
        v.sigma = sigma;
    }
}

Violation merge(Violation a, const Violation& b) {
    const Index count = a.count + b.count;
    if (b.worst > a.worst) a = b;
    a.count = count;
    return a;
}

}  // namespace

Violation positivity_violation(const Field2D& y, double min_sigma) {
    const auto& g = y.grid();
    const auto& v = y.values();
    Violation out;
    for (Index i = 1; i + 1 < v.rows(); ++i)
        for (Index j = 1; j + 1 < v.cols(); ++j)
            if (g.axis2.node(j) >= min_sigma) record(out, -v(i, j), g.axis1.node(i), g.axis2.node(j));
    return out;
}

Violation amplitude_violation(const Field2D& y, const Field1D& h) {
    const auto& g = y.grid();
    const auto& v = y.values();
    Violation out;
    for (Index i = 0; i < v.rows(); ++i) {
        const double bound = interp_linear(h, g.axis1.node(i));
        for (Index j = 0; j + 1 < v.cols(); ++j) record(out, v(i, j) - bound, g.axis1.node(i), g.axis2.node(j));
    }
    return out;
}

Violation x1_decrease_violation(const Field2D& y) {
    const auto& g = y.grid();
    const auto& v = y.values();
    const double min_sigma = 2.0 * g.axis2.spacing() * (1.0 - 1e-12);
    Violation out;
    for (Index i = 1; i + 1 < v.rows(); ++i)
        for (Index j = 1; j + 1 < v.cols(); ++j)
            if (g.axis2.node(j) >= min_sigma) record(out, v(i + 1, j) - v(i, j), g.axis1.node(i), g.axis2.node(j));
    return out;
}

Violation sigma_increase_violation(const Field2D& y) {
    const auto& g = y.grid();
    const auto& v = y.values();
    const double min_sigma = 2.0 * g.axis2.spacing() * (1.0 - 1e-12);
    Violation out;
    for (Index i = 1; i + 1 < v.rows(); ++i)
        for (Index j = 1; j + 1 < v.cols(); ++j)
            if (g.axis2.node(j) >= min_sigma) record(out, v(i, j) - v(i, j + 1), g.axis1.node(i), g.axis2.node(j));
    return out;
}

Violation monotonicity_violation(const Field2D& y) {
    return merge(x1_decrease_violation(y), sigma_increase_violation(y));
}

}  // namespace painleve
