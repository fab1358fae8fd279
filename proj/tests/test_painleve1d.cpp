#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "painleve/airy.hpp"
#include "painleve/painleve1d.hpp"

using namespace painleve;

namespace {

const HmSolution& reference() {
    static const HmSolution s = solve_hastings_mcleod(HmProblem{});
    return s;
}

// h(0) from the independent solver at 4801, 9601, 19201 nodes, extrapolated.
double h0_oracle() {
    static const double value = [] {
        const double left = hm_left_asymptote(-12.0), right = airy_ai(12.0).value;
        double v[3];
        const int counts[3] = {4801, 9601, 19201};
        for (int k = 0; k < 3; ++k) {
            const auto y = oracle::hm_newton(-12.0, 12.0, counts[k], left, right);
            REQUIRE(!y.empty());
            v[k] = y[(counts[k] - 1) / 2];
        }
        return oracle::richardson3(v[0], v[1], v[2]);
    }();
    return value;
}

}  // namespace

TEST_CASE("left asymptote") {
    CHECK(hm_left_asymptote(-2.0) == 0.984375);
    CHECK(hm_left_asymptote(-8.0) == doctest::Approx(1.99951171875).epsilon(1e-15));
    CHECK(hm_left_asymptote(-100.0) / std::sqrt(50.0) == doctest::Approx(1.0 - 1.25e-7).epsilon(1e-15));
    CHECK(hm_left_asymptote(-8.0, false) == 2.0);
    CHECK_THROWS_AS(hm_left_asymptote(0.0), InvalidArgument);
    CHECK_THROWS_AS(hm_left_asymptote(1.0), InvalidArgument);
}

TEST_CASE("residual on simple inputs") {
    const Grid1D g = build_grid1(-5.0, 5.0, 2001);
    const Field1D zero = Field1D::zeros(g);
    CHECK(hm_residual(zero).values().lpNorm<Eigen::Infinity>() == 0.0);

    const Field1D ai = Field1D::sample(g, [](double x) { return airy_ai(x).value; });
    const Field1D r = hm_residual(ai);
    CHECK(r[0] == 0.0);
    CHECK(r[g.count() - 1] == 0.0);
    double worst = 0.0;
    for (Index i = 1; i + 1 < g.count(); ++i) worst = std::max(worst, std::abs(r[i] + 2 * std::pow(ai[i], 3)));
    CHECK(worst < 9.5 * g.spacing() * g.spacing() / 12);
}

TEST_CASE("problem validation") {
    HmProblem p;
    p.grid = build_grid1(-3.0, 12.0, 101);
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.grid = build_grid1(-12.0, 3.0, 101);
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = HmProblem{};
    p.damping = 0.0;
    CHECK_THROWS_AS(solve_hastings_mcleod(p), InvalidArgument);
}

TEST_CASE("reference solve") {
    const HmSolution& s = reference();
    const Field1D& h = s.h;
    CHECK(s.report.converged);
    CHECK(s.report.final_residual < 1e-10);
    CHECK(hm_residual(h).values().lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK(h[0] == hm_left_asymptote(-12.0));
    CHECK(h[h.size() - 1] == airy_ai(12.0).value);
    for (Index i = 0; i < h.size(); ++i) CHECK(h[i] > 0.0);
    for (Index i = 0; i + 1 < h.size(); ++i) CHECK(h[i + 1] < h[i]);
    CHECK(h[2400] == doctest::Approx(0.3670615).epsilon(1e-6));
    CHECK(std::abs(h[2400] - h0_oracle()) < 1e-6);
}

TEST_CASE("second-order grid convergence of h(0)") {
    const double oracle = h0_oracle();
    auto h0 = [](Index count) {
        HmProblem p;
        p.grid = build_grid1(-12.0, 12.0, count);
        p.newton_tol = 1e-8;
        const HmSolution s = solve_hastings_mcleod(p);
        return s.h[(count - 1) / 2];
    };
    const double e1 = std::abs(h0(2401) - oracle);
    const double e2 = std::abs(h0(4801) - oracle);
    const double e3 = std::abs(h0(9601) - oracle);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
    CHECK(e2 / e3 >= 3.5);
    CHECK(e2 / e3 <= 4.5);
}

TEST_CASE("interpolates the two branches") {
    const Field1D& h = reference().h;
    for (Index i = 0; i < h.size(); ++i) {
        const double x = h.grid().node(i);
        if (x <= -6.0) CHECK(std::abs(h[i] - std::sqrt(-x / 2)) / std::sqrt(-x / 2) <= 1e-2);
        if (x >= 4.0) {
            const double ratio = h[i] / airy_ai(x).value;
            CHECK(ratio >= 0.9);
            CHECK(ratio <= 1.1);
        }
    }
    CHECK(std::abs(interp_linear(h, 5.0) / airy_ai(5.0).value - 1.0) < 5e-3);
}

TEST_CASE("convexity relation h'' = x h + 2 h^3") {
    const Field1D& h = reference().h;
    const Field1D d2 = second_derivative(h);
    double worst = 0.0;
    for (Index i = 1; i + 1 < h.size(); ++i) {
        const double x = h.grid().node(i);
        worst = std::max(worst, std::abs(d2[i] - x * h[i] - 2 * std::pow(h[i], 3)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("leading-order boundary condition is available") {
    HmProblem p;
    p.corrected_left_bc = false;
    const HmSolution s = solve_hastings_mcleod(p);
    CHECK(s.h[0] == std::sqrt(6.0));
    // the boundary offset (~1e-4) decays into the interior
    CHECK(std::abs(s.h[2400] - reference().h[2400]) < 1e-6);
}

TEST_CASE("initial guess") {
    const Grid1D g = build_grid1(-12.0, 12.0, 241);
    const Field1D y0 = hm_initial_guess(g);
    CHECK(y0[0] == doctest::Approx(std::sqrt(6.0)));
    CHECK(interp_linear(y0, 0.0) == doctest::Approx(std::sqrt(0.125)));
    CHECK(interp_linear(y0, 5.0) == doctest::Approx(airy_ai(5.0).value));
}

TEST_CASE("no convergence is reported with the solve state") {
    HmProblem p;
    p.max_iter = 1;
    p.newton_tol = 1e-14;
    try {
        solve_hastings_mcleod(p);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK_FALSE(e.report().converged);
        CHECK(e.report().iterations == 1);
    }
}
