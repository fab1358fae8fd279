#include <cmath>
#include <numbers>

#include "doctest.h"
#include "painleve/airy.hpp"
#include "painleve/analysis.hpp"
#include "painleve/vortex_checks.hpp"

using namespace painleve;

namespace {

struct Reference {
    VortexProblem problem;
    HmSolution h;
    VortexField field;
};

const Reference& reference() {
    static const Reference ref = [] {
        VortexProblem p;
        HmSolution h = solve_hastings_mcleod(vortex_hm_problem(p));
        const GlProfile gl = solve_gl_profile(vortex_gl_problem(p));
        VortexField v = solve_vortex(p, h.h, gl.f);
        return Reference{p, std::move(h), std::move(v)};
    }();
    return ref;
}

VortexField with_values(const VortexField& f, const Eigen::MatrixXd& values) {
    VortexField out = f;
    out.y = Field2D(f.y.grid(), values);
    return out;
}

}  // namespace

TEST_CASE("rescaling map") {
    CHECK(rescaled_x1(-2.0 / 3.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(rescaled_x1(-16.0 / 3.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(rescaled_amplitude(-16.0 / 3.0) == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-15));
    CHECK(rescaled_sigma(-16.0 / 3.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rescaled_sigma(-16.0 / 3.0, -1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(rescaled_x1(0.0), InvalidArgument);
    CHECK_THROWS_AS(rescaled_x1(1.0), InvalidArgument);
}

TEST_CASE("rescaled slices of the converged field") {
    const VortexField& f = reference().field;
    const double slices[] = {-6.0, -9.0, -12.0};
    const RescaledField r = rescale_slices(f, slices, 3.0, 301);
    REQUIRE(r.values.size() == 3);
    for (const Field1D& s : r.values) CHECK(s[0] == 0.0);
    // spot value: the map is a plain change of variables
    const double t1 = -9.0;
    CHECK(r.values[1][100] == doctest::Approx(rescaled_amplitude(t1) *
                                              interp_bilinear(f.y, rescaled_x1(t1), rescaled_sigma(t1, 1.0)))
                                  .epsilon(1e-14));

    const double e6 = gl_comparison_error(r.values[0], f.gl_used);
    const double e12 = gl_comparison_error(r.values[2], f.gl_used);
    CHECK(e12 < e6);
    CHECK(e12 < 0.1);

    CHECK_THROWS_AS(rescale_field(f, 1.0, 3.0, 11), InvalidArgument);
    // t1 = -40 maps to x1 ~ -15.3, outside the rectangle
    CHECK_THROWS_AS(rescale_field(f, -40.0, 3.0, 11), OutOfDomain);
    // a deep slice with a wide window leaves through the top edge
    CHECK_THROWS_AS(rescale_field(f, -1.0, 30.0, 11), OutOfDomain);
}

TEST_CASE("gl comparison against itself") {
    const GlProfile gl = solve_gl_profile(GlProblem{});
    const Field1D on_tau = Field1D::sample(build_grid1(0.0, 3.0, 301), [&](double t) { return gl_eval(gl, t); });
    CHECK(gl_comparison_error(on_tau, gl) == 0.0);
}

TEST_CASE("amplitude bound") {
    const Reference& ref = reference();
    const VortexField& f = ref.field;
    CHECK(check_amplitude_bound(f, f.h_used).passed);

    Eigen::MatrixXd at_h(f.y.values().rows(), f.y.values().cols());
    for (Index i = 0; i < at_h.rows(); ++i) at_h.row(i).setConstant(f.h_used[i]);
    const CheckReport equal = check_amplitude_bound(with_values(f, at_h), f.h_used);
    CHECK_FALSE(equal.passed);
    CHECK(equal.worst_violation == 0.0);

    const CheckReport zero = check_amplitude_bound(with_values(f, Eigen::MatrixXd::Zero(at_h.rows(), at_h.cols())),
                                                   f.h_used);
    CHECK(zero.passed);
}

TEST_CASE("monotonicity and positivity") {
    const VortexField& f = reference().field;
    CHECK(check_monotonicity(f).passed);
    CHECK(check_positivity(f).passed);

    const Eigen::MatrixXd c = Eigen::MatrixXd::Constant(f.y.values().rows(), f.y.values().cols(), 0.5);
    const VortexField flat = with_values(f, c);
    const CheckReport m = check_monotonicity(flat);
    CHECK_FALSE(m.passed);
    CHECK(m.worst_violation == 0.0);
    CHECK(x1_decrease_violation(flat.y).count > 0);
    CHECK(sigma_increase_violation(flat.y).count > 0);

    Eigen::MatrixXd neg = f.y.values();
    neg(100, 100) = -1e-3;
    CHECK_FALSE(check_positivity(with_values(f, neg)).passed);

    // the initial guess is only recorded: tanh saturates to exactly 1 at large sigma,
    // which flattens the sigma steps there
    const Field2D guess = initial_guess(reference().problem, reference().h.h);
    const Violation gs = sigma_increase_violation(guess);
    CHECK(gs.worst <= 0.0);
    MESSAGE("initial guess: " << gs.count << " flat sigma steps, " << x1_decrease_violation(guess).count
                              << " nodes fail the x1 decrease");
}

TEST_CASE("decay fit") {
    const Grid1D g = build_grid1(0.0, 8.0, 801);
    const Field1D exact = Field1D::sample(g, [](double x) { return std::exp(-2.0 / 3.0 * std::pow(x, 1.5)); });
    CHECK(std::abs(fit_decay_rate(exact, 3.0, 7.0) - 1.0) < 1e-10);
    const Field1D scaled = Field1D::sample(g, [](double x) { return 7.0 * std::exp(-1.3 * 2.0 / 3.0 * std::pow(x, 1.5)); });
    CHECK(std::abs(fit_decay_rate(scaled, 3.0, 7.0) - 1.3) < 1e-10);
    const Field1D wrong = Field1D::sample(g, [](double x) { return std::exp(-x); });
    CHECK(std::abs(fit_decay_rate(wrong, 3.0, 7.0) - 1.0) > 0.4);
    CHECK_FALSE(check_decay("wrong", wrong, 3.0, 7.0, 0.1).passed);

    CHECK_THROWS_AS(fit_decay_rate(exact, 2.0, 7.0), InvalidArgument);
    CHECK_THROWS_AS(fit_decay_rate(exact, 3.0, 7.5), InvalidArgument);
    Eigen::VectorXd v = exact.values();
    v[500] = 0.0;
    CHECK_THROWS_AS(fit_decay_rate(Field1D(g, v), 3.0, 7.0), InvalidArgument);
}

TEST_CASE("decay of h and of the field") {
    const Reference& ref = reference();
    CHECK(std::abs(fit_decay_rate(ref.h.h, 3.0, 8.0) - 1.0) < 0.05);
    CHECK(std::abs(fit_decay_rate(sigma_trace(ref.field, 6.0), 3.0, 7.0) - 1.0) < 0.1);
    CHECK(check_decay("vortex_decay", sigma_trace(ref.field, 6.0), 3.0, 7.0, 0.1).passed);
}

TEST_CASE("Hastings-McLeod asymptotics") {
    const Reference& ref = reference();
    CHECK(check_hm_asymptotics(ref.h).passed);

    const Grid1D g = ref.h.h.grid();
    const Field1D ai = Field1D::sample(g, [](double x) { return airy_ai(x).value; });
    const CheckReport a = check_hm_asymptotics(ai);
    CHECK_FALSE(a.passed);
    CHECK(a.worst_location[0] == -10.0);  // only the left check fails
    CHECK(std::abs(ai[g.count() - 1] / airy_ai(12.0).value - 1.0) == 0.0);

    const Field1D branch = Field1D::sample(g, [](double x) { return std::sqrt(std::max(-x, 0.0) / 2); });
    const CheckReport b = check_hm_asymptotics(branch);
    CHECK_FALSE(b.passed);
    CHECK(b.worst_location[0] == 5.0);  // only the right check fails
}

TEST_CASE("slab rigidity") {
    const Reference& ref = reference();
    VortexProblem slab = ref.problem;
    slab.grid.axis2 = build_grid1(0.0, 6.0, 121);
    const CheckReport pass = verify_slab_equals_h(slab, ref.h.h);
    CHECK(pass.passed);
    CHECK(pass.worst_violation < 1e-7);

    const CheckReport fail = verify_slab_equals_h(slab, ref.h.h, SlabBottom::zero);
    CHECK_FALSE(fail.passed);
    CHECK(fail.worst_violation > 0.1);
}

TEST_CASE("one-dimensional vector solutions") {
    const Field1D& h = reference().h.h;
    const double scalar = hm_residual(h).values().lpNorm<Eigen::Infinity>();
    const double a = verify_1d_vector_direction(h, {1.0, 0.0});
    const double b = verify_1d_vector_direction(h, {std::sqrt(0.5), std::sqrt(0.5)});
    const double c = verify_1d_vector_direction(h, {0.6, 0.8});
    CHECK(std::abs(a - b) <= 1e-12);
    CHECK(std::abs(a - c) <= 1e-12);
    CHECK(a <= 10 * scalar);
    CHECK(a == doctest::Approx(scalar).epsilon(1e-3));
    CHECK_THROWS_AS(verify_1d_vector_direction(h, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(verify_1d_vector_direction(h, {0.6, 0.79}), InvalidArgument);
}

TEST_CASE("random bumps and minimality") {
    const VortexField& f = reference().field;
    const auto bumps = random_admissible_bumps(f.y.grid(), 100, 20240607ULL);
    REQUIRE(bumps.size() == 100);
    const auto again = random_admissible_bumps(f.y.grid(), 100, 20240607ULL);
    CHECK(again[37].x1 == bumps[37].x1);
    CHECK(again[37].amplitude == bumps[37].amplitude);
    for (const BumpSpec& b : bumps) {
        CHECK(b.radius >= 0.3);
        CHECK(b.radius <= 2.0);
        CHECK(std::abs(b.amplitude) >= 1e-3);
        CHECK(std::abs(b.amplitude) <= 0.5);
        CHECK_NOTHROW(perturbation_energy_delta(f, b));
    }
    const CheckReport m = check_minimality(f, bumps);
    CHECK(m.passed);
    CHECK(m.worst_violation < 0.0);

    // a field that is not a critical point: the bump centred on a large residual lowers the energy
    Eigen::MatrixXd bent = f.y.values();
    for (Index i = 100; i < 140; ++i)
        for (Index j = 40; j < 80; ++j) bent(i, j) += 0.3;
    const VortexField off = with_values(f, bent);
    const BumpSpec down{-8.0 + 120 * 0.05, 60 * 0.05, 0.9, -0.1};
    CHECK(perturbation_energy_delta(off, down) < 0.0);
    const BumpSpec arr[] = {down};
    CHECK_FALSE(check_minimality(off, arr).passed);
}

TEST_CASE("corner mismatch") {
    const VortexField& f = reference().field;
    CHECK(check_corner_mismatch(f, 2e-2).passed);
    CHECK_FALSE(check_corner_mismatch(f, 1e-6).passed);
}
