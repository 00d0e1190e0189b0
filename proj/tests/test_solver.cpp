#include "doctest.h"

#include <cmath>
#include <random>

#include "elastoball/certify.hpp"
#include "elastoball/grid_scan.hpp"
#include "elastoball/solver.hpp"

using namespace elastoball;

namespace {
const LameParameters kUnit{1.0, 1.0, 1.0};
constexpr double kPi = 3.141592653589793238462643383279502884;

// least-squares coefficient a of f - f0 = a r^2 + b r^4 over r < r_cut;
// the quartic term absorbs the next order of the center expansion
double fit_r2_coefficient(const std::vector<double>& r, const std::vector<double>& f, double f0,
                          double r_cut) {
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] >= r_cut) break;
        const double u = r[i] * r[i];
        const double g = f[i] - f0;
        s11 += u * u;
        s12 += u * u * u;
        s22 += u * u * u * u;
        b1 += g * u;
        b2 += g * u * u;
    }
    return (b1 * s22 - b2 * s12) / (s11 * s22 - s12 * s12);
}

}  // namespace

TEST_CASE("SVK ball at delta_c = 1.5") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto sol = solve_ball(svk, 1.5, 1.0);
    CHECK(sol.method == "xi-shooting");
    // reference values from an independent fixed-step integration
    CHECK(sol.R == doctest::Approx(0.492285).epsilon(2e-4));
    CHECK(sol.M == doctest::Approx(0.604831).epsilon(2e-4));
    CHECK(sol.central_pressure == doctest::Approx(svk.p_rad(std::cbrt(1.5), 1.0)));

    // grid sanity: r strictly increasing, x strictly decreasing, 0 < y < 1
    for (std::size_t i = 1; i < sol.size(); ++i) {
        CHECK(sol.r[i] > sol.r[i - 1]);
        CHECK(sol.x[i] < sol.x[i - 1] * (1.0 + 1e-13));
        CHECK(sol.y[i] > 0.0);
        CHECK(sol.y[i] < 1.0);
    }
    // pressures positive inside, surface event tight
    for (std::size_t i = 0; i + 1 < sol.size(); ++i) {
        CHECK(sol.p_rad[i] > 0.0);
        CHECK(sol.p_tan[i] > 0.0);
    }
    CHECK(std::abs(sol.p_rad.back()) < 1e-10 * sol.central_pressure);
    // mass column is definitionally tied to eta
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double expect = 4.0 * kPi / 3.0 * sol.eta[i] * sol.r[i] * sol.r[i] * sol.r[i];
        CHECK(std::abs(sol.m[i] - expect) <= 1e-12 * expect);
    }
    // vacuum matching of the potential
    CHECK(sol.phi.back() == doctest::Approx(-sol.M / sol.R).epsilon(1e-14));

    const auto bounds = verify_bounds(svk, sol);
    CHECK(bounds.all_hold);
    CHECK(bounds.worst() > 0.0);
    CHECK(residual(svk, sol) < 1e-6);
}

TEST_CASE("potential consistency of the stored profiles") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    for (const auto& sol : {solve_ball(svk, 1.5, 1.0), solve_ball_radial(svk, 1.5, 1.0)}) {
        const auto dphi = profile_derivative(sol.r, sol.phi);
        double worst = 0.0;
        for (std::size_t i = 3; i + 3 < sol.size(); ++i) {
            if (sol.r[i] < 0.02 * sol.R) continue;
            const double expect = sol.m[i] / (sol.r[i] * sol.r[i]);
            worst = std::max(worst, std::abs(dphi[i] - expect) /
                                        std::max(std::abs(expect), 1e-300));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("small central compression gives a small ball") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto near = solve_ball(svk, 1.01, 1.0);
    const auto nearer = solve_ball(svk, 1.001, 1.0);
    const auto ref = solve_ball(svk, 1.5, 1.0);
    CHECK(near.central_pressure > 0.0);
    CHECK(nearer.central_pressure > 0.0);
    CHECK(nearer.central_pressure < near.central_pressure);
    CHECK(near.central_pressure < ref.central_pressure);
    CHECK(near.R < ref.R);
    CHECK(nearer.R < near.R);
}

TEST_CASE("no-crossing diagnostics when the span is cut short") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    SolveOptions opts;
    opts.xi_max = 0.5;  // far too short to reach the surface
    try {
        solve_ball(svk, 1.5, 1.0, opts);
        CHECK(false);
    } catch (const SolveError& e) {
        CHECK(e.kind == SolveError::Kind::no_crossing);
        CHECK(std::string(e.what()).find("p_rad") != std::string::npos);
    }
}

TEST_CASE("deterministic resolve") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto a = solve_ball(svk, 1.5, 1.0);
    const auto b = solve_ball(svk, 1.5, 1.0);
    REQUIRE(a.size() == b.size());
    CHECK(a.R == b.R);
    CHECK(a.M == b.M);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.r[i] == b.r[i]);
        CHECK(a.delta[i] == b.delta[i]);
        CHECK(a.phi[i] == b.phi[i]);
    }
}

TEST_CASE("two integration routes agree") {
    for (BuiltinKind kind :
         {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half}) {
        const auto model = make_builtin(kind, kUnit);
        const auto shoot = solve_ball(model, 1.5, 1.0);
        const auto radial = solve_ball_radial(model, 1.5, 1.0);
        CHECK(std::abs(shoot.R - radial.R) / radial.R < 1e-6);
        CHECK(std::abs(shoot.M - radial.M) / radial.M < 1e-6);
        CHECK(residual(model, radial) < 1e-6);
        const auto bounds = verify_bounds(model, radial);
        CHECK(bounds.all_hold);
    }
}

TEST_CASE("reference-density scaling") {
    // with G = 1 lengths scale like 1/K and masses like 1/K^2 at fixed
    // delta_c, so a K = 2 solve is the K = 1 ball shrunk accordingly
    const auto svk1 = make_builtin(BuiltinKind::svk, kUnit);
    const auto svk2 = make_builtin(BuiltinKind::svk, LameParameters{1.0, 1.0, 2.0});
    const auto a = solve_ball(svk1, 1.5, 1.0);
    const auto b = solve_ball(svk2, 3.0, 2.0);  // same delta_c = 1.5
    CHECK(b.R == doctest::Approx(a.R / 2.0).epsilon(1e-9));
    CHECK(b.M == doctest::Approx(a.M / 4.0).epsilon(1e-9));
    const auto br = solve_ball_radial(svk2, 3.0, 2.0);
    CHECK(std::abs(b.R - br.R) / br.R < 1e-6);
    CHECK(std::abs(b.M - br.M) / br.M < 1e-6);
}

TEST_CASE("center expansion of the radial route") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto sol = solve_ball_radial(svk, 1.5, 1.0);
    // eta2/delta2 = 3/5 for every model: fit the quadratic coefficients
    const double d2_expect =
        -(2.0 * kPi / 3.0) * 1.5 * 1.5 / svk.dd_p_rad_de(1.5, 1.5);
    const double d2_fit = fit_r2_coefficient(sol.r, sol.delta, 1.5, 0.05 * sol.R);
    const double e2_fit = fit_r2_coefficient(sol.r, sol.eta, 1.5, 0.05 * sol.R);
    CHECK(d2_fit == doctest::Approx(d2_expect).epsilon(1e-5));
    CHECK(e2_fit / d2_fit == doctest::Approx(0.6).epsilon(1e-4));
}

TEST_CASE("window and precondition errors") {
    const auto john = make_builtin(BuiltinKind::john, kUnit);
    CHECK_THROWS_AS(solve_ball(john, 0.9, 1.0), SolveError);
    try {
        solve_ball(john, 0.9, 1.0);
    } catch (const SolveError& e) {
        CHECK(e.kind == SolveError::Kind::window);
    }
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    // above the hyperbolicity cap the window check fires first...
    CHECK_THROWS_AS(solve_ball(svk, 3.5, 1.0), SolveError);
    // ...and the radial route rejects by central hyperbolicity
    try {
        SolveOptions opts;
        opts.experimental = true;
        solve_ball_radial(svk, 3.5, 1.0, opts);
        CHECK(false);
    } catch (const SolveError& e) {
        CHECK(e.kind == SolveError::Kind::hyperbolicity_loss);
    }
}

TEST_CASE("Seth ball through the radial route") {
    const auto seth = make_builtin(BuiltinKind::seth, kUnit);
    // c != 0 delegates to the radial integrator
    const auto sol = solve_ball(seth, 2.0, 1.0);
    CHECK(sol.method == "radial");
    CHECK(sol.R > 0.0);
    CHECK(std::abs(sol.p_rad.back()) < 1e-10 * sol.central_pressure);
    for (std::size_t i = 0; i + 1 < sol.size(); ++i) CHECK(sol.p_rad[i] > 0.0);
    CHECK(residual(seth, sol) < 1e-6);
    const auto bounds = verify_bounds(seth, sol);
    CHECK(bounds.all_hold);
}

TEST_CASE("Seth existence window boundary") {
    const auto seth = make_builtin(BuiltinKind::seth, kUnit);
    // balls exist exactly for delta_c > 1: just above the threshold the
    // central pressure is barely positive and a small ball comes out
    const auto sol = solve_ball(seth, 1.05, 1.0);
    CHECK(sol.R > 0.0);
    CHECK(sol.central_pressure > 0.0);
    // at and below the threshold the central radial pressure is nonpositive
    CHECK_THROWS_AS(solve_ball(seth, 0.99, 1.0), SolveError);
    CHECK_THROWS_AS(solve_ball(seth, 1.0, 1.0), SolveError);
}

TEST_CASE("randomized parameters keep the construction consistent") {
    std::mt19937 rng(20240818);
    std::uniform_real_distribution<double> dl(0.3, 2.5), dm(0.3, 2.5), du(0.2, 0.8);
    for (int trial = 0; trial < 3; ++trial) {
        const LameParameters lame{dl(rng), dm(rng), 1.0};
        for (BuiltinKind kind :
             {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half}) {
            const auto model = make_builtin(kind, lame);
            const auto cert = certify(model);
            REQUIRE(cert.all_passed());
            const double hi = std::min(cert.delta_max, 6.0);
            const double delta_c = 1.0 + (hi - 1.0) * du(rng);
            const auto sol = solve_ball(model, delta_c, 1.0);
            CHECK(verify_bounds(model, sol).all_hold);
            CHECK(std::abs(sol.p_rad.back()) < 1e-10 * sol.central_pressure);
            CHECK(residual(model, sol) < 1e-6);
        }
    }
}

TEST_CASE("center regularity of solved balls") {
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john}) {
        const auto model = make_builtin(kind, kUnit);
        const auto sol = solve_ball(model, 1.5, 1.0);
        const auto rep = verify_center_regularity(model, sol);
        CHECK(rep.sufficient_resolution);
        CHECK(rep.inner_points >= 20);
        CHECK(rep.slope_delta_prime > 0.9);
        CHECK(rep.slope_delta_prime < 1.1);
        CHECK(rep.slope_delta_minus_eta > 1.9);
        CHECK(rep.slope_delta_minus_eta < 2.1);
        CHECK(std::abs(rep.chi_center) < 1e-8 * 3.0);
        CHECK(std::abs(rep.iso_center) < 1e-5 * 3.0);

        // the derivative itself vanishes linearly: |delta'(r_min)| scales
        // like r_min relative to |delta'(0.1 R)|
        const auto dd = profile_derivative(sol.r, sol.delta);
        std::size_t i_ref = 0;
        while (sol.r[i_ref] < 0.1 * sol.R) ++i_ref;
        const double ratio = std::abs(dd[2]) / std::abs(dd[i_ref]);
        CHECK(ratio == doctest::Approx(sol.r[2] / sol.r[i_ref]).epsilon(0.2));
    }
}

TEST_CASE("vacuum continuation and decay exponents") {
    const auto john = make_builtin(BuiltinKind::john, kUnit);
    const auto rj = continue_to_vacuum(john, 1.5, 1.0);
    CHECK(rj.expected_exponent == doctest::Approx(-0.4));
    CHECK(rj.fitted_exponent == doctest::Approx(-0.4).epsilon(0.02));
    CHECK(std::abs(rj.y_end - rj.y_star) < 1e-4);
    CHECK(std::abs(rj.v_end - rj.v_star) < 1e-4);

    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto rs = continue_to_vacuum(svk, 1.5, 1.0);
    CHECK(rs.expected_exponent == doctest::Approx(-2.0 / 7.0));
    CHECK(rs.fitted_exponent == doctest::Approx(-2.0 / 7.0).epsilon(0.02));
    CHECK(rs.y_star == doctest::Approx(5.0 / 7.0));
}

TEST_CASE("sweep") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    CHECK(sweep(svk, {}, 1.0).empty());
    const auto single = sweep(svk, {1.5}, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].ok);
    const auto direct = solve_ball(svk, 1.5, 1.0);
    CHECK(single[0].R == direct.R);
    CHECK(single[0].M == direct.M);

    const std::vector<double> deltas{1.1, 1.5, 2.0, 2.5, 3.0};
    const auto rows = sweep(svk, deltas, 1.0);
    REQUIRE(rows.size() == deltas.size());
    double prev_pc = 0.0;
    for (const auto& row : rows) {
        CHECK(row.ok);
        CHECK(row.worst_margin > 0.0);
        CHECK(row.central_pressure > prev_pc);  // increasing in delta_c
        prev_pc = row.central_pressure;
    }
    // failures are recorded per row, the sweep continues
    const auto mixed = sweep(svk, {0.5, 1.5}, 1.0);
    CHECK_FALSE(mixed[0].ok);
    CHECK(!mixed[0].error.empty());
    CHECK(mixed[1].ok);
}

TEST_CASE("sweep results do not depend on the thread setting") {
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const std::vector<double> deltas{1.2, 1.7, 2.3};
    const bool before = grid::threads_enabled();
    grid::set_threads_enabled(true);
    const auto par = sweep(svk, deltas, 1.0);
    grid::set_threads_enabled(false);
    const auto ser = sweep(svk, deltas, 1.0);
    grid::set_threads_enabled(before);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].R == ser[i].R);
        CHECK(par[i].M == ser[i].M);
        CHECK(par[i].worst_margin == ser[i].worst_margin);
    }
}

TEST_CASE("fluid limit reproduces the classical center expansion") {
    const LameParameters fl{1.0, 0.0, 1.0};
    const auto fluid = ConstitutiveModel::from_power_law(fluid_spec(fl), "fluid");
    const double delta_c = 1.5;
    const auto sol = solve_ball_radial(fluid, delta_c, 1.0);
    // rho ~ rho_c - (2 pi / 3) rho_c^2 / p'(rho_c) r^2 with p(rho) = 1 - 1/rho;
    // the series coefficient is evaluated by finite differences of the
    // barotropic pressure law, independently of the solver internals
    const double h = 1e-6;
    const double dp_drho =
        (fluid.p_rad_de(delta_c + h, 1.0) - fluid.p_rad_de(delta_c - h, 1.0)) / (2.0 * h);
    const double rho2_expect = -(2.0 * kPi / 3.0) * delta_c * delta_c / dp_drho;
    const double rho2_fit = fit_r2_coefficient(sol.r, sol.delta, delta_c, 0.05 * sol.R);
    CHECK(rho2_fit == doctest::Approx(rho2_expect).epsilon(1e-4));
    // fluid pressures are isotropic along the solution
    for (std::size_t k = 0; k < sol.size(); k += 100)
        CHECK(sol.p_rad[k] == doctest::Approx(sol.p_tan[k]).epsilon(1e-12));
}

TEST_CASE("bounds checker flags a constant-density profile") {
    BallSolution fake;
    fake.rho_c = 1.5;
    fake.kappa_ref = 1.0;
    fake.R = 1.0;
    fake.M = 4.0 * kPi / 3.0 * 1.5;
    for (int i = 1; i <= 50; ++i) {
        const double r = i / 50.0;
        fake.r.push_back(r);
        fake.delta.push_back(1.5);
        fake.eta.push_back(1.5);  // m = (4 pi/3) rho_c r^3 exactly: not strictly below
        fake.x.push_back(std::cbrt(1.5));
        fake.y.push_back(1.0);
        fake.m.push_back(4.0 * kPi / 3.0 * 1.5 * r * r * r);
        fake.p_rad.push_back(1.0);
        fake.p_tan.push_back(1.0);
        fake.phi.push_back(0.0);
    }
    const auto svk = make_builtin(BuiltinKind::svk, kUnit);
    const auto rep = verify_bounds(svk, fake);
    CHECK_FALSE(rep.all_hold);
    CHECK(rep.mass_upper <= 0.0);
    CHECK(rep.density <= 0.0);
}

TEST_CASE("residual of a vacuum profile is zero") {
    BallSolution empty;
    empty.kappa_ref = 1.0;
    empty.rho_c = 1.0;
    for (int i = 1; i <= 40; ++i) {
        const double r = i / 40.0;
        empty.r.push_back(r);
        empty.delta.push_back(0.0);
        empty.eta.push_back(0.0);
        empty.x.push_back(0.0);
        empty.y.push_back(1.0);
        empty.m.push_back(0.0);
        empty.p_rad.push_back(0.0);
        empty.p_tan.push_back(0.0);
        empty.phi.push_back(0.0);
    }
    const auto seth = make_builtin(BuiltinKind::seth, kUnit);
    CHECK(residual(seth, empty) == 0.0);
}

TEST_CASE("experimental gate for low-density John data") {
    const auto john = make_builtin(BuiltinKind::john, kUnit);
    // X* = 2 mu / (3 lambda + 4 mu) = 2/7: central pressure is positive there
    const double delta_c = std::pow(0.2, 3.0);
    CHECK_THROWS_AS(solve_ball(john, delta_c, 1.0), SolveError);
    SolveOptions opts;
    opts.experimental = true;
    opts.xi_max = 30.0;
    try {
        const auto sol = solve_ball(john, delta_c, 1.0, opts);
        CHECK(sol.R > 0.0);  // if it comes back, it must be a genuine ball
        CHECK(std::abs(sol.p_rad.back()) < 1e-8 * sol.central_pressure);
    } catch (const SolveError& e) {
        // an honest no-crossing outcome is acceptable for the open case
        CHECK(e.kind == SolveError::Kind::no_crossing);
    }
}
