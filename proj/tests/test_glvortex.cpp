#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "painleve/glvortex.hpp"

using namespace painleve;

namespace {

GlProfile solve(int d, double r_max, Index count) {
    GlProblem p;
    p.d = d;
    p.grid = build_grid1(0.0, r_max, count);
    p.newton_tol = 1e-9;
    return solve_gl_profile(p);
}

double slope0(const Field1D& f) { return (f[1] - f[0]) / f.grid().spacing(); }

}  // namespace

TEST_CASE("far field") {
    CHECK(gl_far_field(20.0, 2) == doctest::Approx(0.99875).epsilon(1e-15));
    CHECK(gl_far_field(20.0, 3) == doctest::Approx(0.9975).epsilon(1e-15));
    CHECK(gl_far_field(1e8, 5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(gl_far_field(0.0, 2), InvalidArgument);
    CHECK_THROWS_AS(gl_far_field(-1.0, 2), InvalidArgument);
}

TEST_CASE("residual on simple inputs") {
    const Grid1D g = build_grid1(0.0, 10.0, 101);
    CHECK(gl_residual(Field1D::zeros(g), 2).values().lpNorm<Eigen::Infinity>() == 0.0);

    for (int d : {2, 3, 4}) {
        Eigen::VectorXd v = Eigen::VectorXd::Ones(g.count());
        v[0] = 0.0;
        const Field1D r = gl_residual(Field1D(g, v), d);
        CHECK(r[0] == 0.0);
        CHECK(r[g.count() - 1] == 0.0);
        // node 1 sees f(0) = 0 through the stencil; from node 2 on only the centrifugal term survives
        for (Index i = 2; i + 1 < g.count(); ++i) {
            const double rr = g.node(i);
            CHECK(r[i] == doctest::Approx(-(d - 1) / (rr * rr)).epsilon(1e-12));
        }
    }
}

TEST_CASE("problem validation") {
    GlProblem p;
    p.d = 1;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = GlProblem{};
    p.grid = build_grid1(0.5, 20.0, 101);
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.grid = build_grid1(0.0, 8.0, 101);
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("reference profile d = 2") {
    const GlProfile s = solve_gl_profile(GlProblem{});
    const Field1D& f = s.f;
    CHECK(s.report.converged);
    CHECK(s.report.final_residual <= 1e-10);
    CHECK(f[0] == 0.0);
    CHECK(f[f.size() - 1] == gl_far_field(20.0, 2));
    for (Index i = 1; i + 1 < f.size(); ++i) {
        CHECK(f[i] >= 0.0);
        CHECK(f[i] < 1.0);
    }
    for (Index i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] > f[i]);

    const double tail = (1.0 - gl_eval(s, 15.0)) * 2.0 * 15.0 * 15.0 / (2 - 1);
    CHECK(tail == doctest::Approx(1.0).epsilon(0.1));
    CHECK_THROWS_AS(gl_eval(s, 20.5), OutOfDomain);
}

TEST_CASE("initial slope is refinement-stable and matches the extrapolated oracle") {
    const double s1 = slope0(solve(2, 20.0, 4001).f);
    const double s2 = slope0(solve(2, 20.0, 8001).f);
    CHECK(std::abs(s1 - s2) < 1e-4);

    auto oracle_slope_at = [](int count) {
        const auto f = oracle::gl_newton(2, 20.0, count);
        REQUIRE(!f.empty());
        return f[1] / (20.0 / (count - 1));
    };
    const double oracle_slope =
        oracle::richardson3(oracle_slope_at(4001), oracle_slope_at(8001), oracle_slope_at(16001));
    CHECK(oracle_slope == doctest::Approx(0.58319).epsilon(1e-4));
    CHECK(std::abs(s1 - oracle_slope) < 1e-4);
}

TEST_CASE("residual agrees with an independently coded evaluator") {
    const GlProfile s = solve_gl_profile(GlProblem{});
    const Field1D r = gl_residual(s.f, 2);
    const Index n = s.f.size();
    const double dr = s.f.grid().spacing();
    double worst = 0.0;
    // reverse sweep over a plain copy of the samples
    const std::vector<double> v(s.f.values().begin(), s.f.values().end());
    const double inv = 1.0 / (dr * dr);
    for (Index i = n - 2; i >= 1; --i) {
        const double rr = static_cast<double>(i) * dr;
        const double ref = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv + 1.0 / rr * (v[i + 1] - v[i - 1]) / (2.0 * dr) -
                           1.0 / (rr * rr) * v[i] + v[i] - v[i] * v[i] * v[i];
        worst = std::max(worst, std::abs(ref - r[i]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("higher dimensions") {
    for (int d : {3, 4}) {
        const GlProfile s = solve(d, 20.0, 4001);
        CHECK(s.f[0] == 0.0);
        for (Index i = 0; i + 1 < s.f.size(); ++i) CHECK(s.f[i + 1] > s.f[i]);
        const double tail = (1.0 - gl_eval(s, 15.0)) * 2.0 * 15.0 * 15.0 / (d - 1);
        CHECK(tail == doctest::Approx(1.0).epsilon(0.1));
    }
}
