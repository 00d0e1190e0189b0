#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "closed_forms.hpp"
#include "elastoball/model.hpp"

using namespace elastoball;

namespace {

const LameParameters kUnit{1.0, 1.0, 1.0};

ConstitutiveModel builtin(BuiltinKind kind, double l = 1.0, double m = 1.0) {
    return make_builtin(kind, LameParameters{l, m, 1.0});
}

// SVK spec with one coefficient nudged off the group-balance condition;
// structurally valid but no longer a stress-isotropic diagonal.
ConstitutiveModel corrupted_svk() {
    PowerLawSpecBuilder b(kUnit);
    b.term(Rational(-4), 3.0 / 8.0 * 1.01, Rational(-4))
        .term(Rational(-4), 0.5, Rational(-2))
        .term(Rational(-4), 1.0, Rational(0))
        .term(Rational(-2), -5.0 / 4.0, Rational(-2))
        .term(Rational(-2), -5.0 / 2.0, Rational(0))
        .offset(15.0 / 8.0);
    return ConstitutiveModel::from_power_law(b.build(), "corrupted", /*require_conditions=*/false);
}

}  // namespace

TEST_CASE("stored energy evaluation spot values") {
    const auto svk = builtin(BuiltinKind::svk);
    CHECK(svk.stored_energy(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(svk.stored_energy(2.0, 0.5) == doctest::Approx(0.5625).epsilon(1e-14));
    const auto john = builtin(BuiltinKind::john);
    CHECK(john.stored_energy(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(svk.stored_energy(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(svk.stored_energy(1.0, 0.0), std::domain_error);
    const auto seth = builtin(BuiltinKind::seth);
    CHECK_THROWS_AS(seth.stored_energy(1.0, 1.0), std::logic_error);
}

TEST_CASE("pressures at reference and spot values") {
    const auto svk = builtin(BuiltinKind::svk);
    const auto john = builtin(BuiltinKind::john);
    const auto seth = builtin(BuiltinKind::seth);
    CHECK(svk.p_rad(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(svk.p_tan(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(john.p_rad(1.0, 0.5) == doctest::Approx(-3.0).epsilon(1e-13));
    CHECK(seth.p_rad(2.0, 1.0) == doctest::Approx(7.5).epsilon(1e-13));
    // P_rad(x,1) spot checks from the per-model reductions
    CHECK(svk.p_rad(2.0, 1.0) == doctest::Approx(3.75).epsilon(1e-13));
    CHECK(john.p_rad(2.0, 1.0) == doctest::Approx(12.0).epsilon(1e-13));
    const auto had = builtin(BuiltinKind::hadamard_half);
    CHECK(had.dy_p_rad(1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK_THROWS_AS(svk.p_rad(0.0, 1.0), std::domain_error);
}

TEST_CASE("closed-form oracles over a grid") {
    const std::vector<double> xs{0.3, 0.8, 1.0, 1.7, 2.5};
    const std::vector<double> ys{0.2, 0.6, 1.0, 1.4};
    for (auto [l, m] : {std::pair{1.0, 1.0}, std::pair{2.3, 0.7}, std::pair{0.5, 3.1}}) {
        const closed_forms::Lame p{l, m};
        const auto svk = builtin(BuiltinKind::svk, l, m);
        const auto john = builtin(BuiltinKind::john, l, m);
        const auto had = builtin(BuiltinKind::hadamard_half, l, m);
        const auto seth = builtin(BuiltinKind::seth, l, m);
        for (double x : xs)
            for (double y : ys) {
                CHECK(svk.p_rad(x, y) ==
                      doctest::Approx(closed_forms::svk_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(svk.p_tan(x, y) ==
                      doctest::Approx(closed_forms::svk_p_tan(p, x, y)).epsilon(1e-12));
                CHECK(svk.dx_p_rad(x, y) ==
                      doctest::Approx(closed_forms::svk_dx_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(svk.dy_p_rad(x, y) ==
                      doctest::Approx(closed_forms::svk_dy_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(john.p_rad(x, y) ==
                      doctest::Approx(closed_forms::john_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(john.p_tan(x, y) ==
                      doctest::Approx(closed_forms::john_p_tan(p, x, y)).epsilon(1e-12));
                CHECK(john.dx_p_rad(x, y) ==
                      doctest::Approx(closed_forms::john_dx_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(john.dy_p_rad(x, y) ==
                      doctest::Approx(closed_forms::john_dy_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(had.p_rad(x, y) ==
                      doctest::Approx(closed_forms::had_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(had.p_tan(x, y) ==
                      doctest::Approx(closed_forms::had_p_tan(p, x, y)).epsilon(1e-12));
                CHECK(had.dx_p_rad(x, y) ==
                      doctest::Approx(closed_forms::had_dx_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(had.dy_p_rad(x, y) ==
                      doctest::Approx(closed_forms::had_dy_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(seth.p_rad(x, y) ==
                      doctest::Approx(closed_forms::seth_p_rad(p, x, y)).epsilon(1e-12));
                CHECK(seth.p_tan(x, y) ==
                      doctest::Approx(closed_forms::seth_p_tan(p, x, y)).epsilon(1e-12));
            }
    }
}

TEST_CASE("stress-free reference and linearization for random Lame parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dl(0.05, 3.0), dm(0.05, 3.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        const double l = dl(rng), m = dm(rng);
        const double pw = l + 2 * m;
        for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half,
                                 BuiltinKind::seth, BuiltinKind::signorini}) {
            const auto model = builtin(kind, l, m);
            CHECK(std::abs(model.p_rad(1.0, 1.0)) < 1e-12 * pw);
            CHECK(std::abs(model.p_tan(1.0, 1.0)) < 1e-12 * pw);
            const double fd_y_pr = (model.p_rad(1.0, 1.0 + h) - model.p_rad(1.0, 1.0 - h)) / (2 * h);
            const double fd_x_pr = (model.p_rad(1.0 + h, 1.0) - model.p_rad(1.0 - h, 1.0)) / (2 * h);
            const double fd_y_pt = (model.p_tan(1.0, 1.0 + h) - model.p_tan(1.0, 1.0 - h)) / (2 * h);
            const double fd_x_pt = (model.p_tan(1.0 + h, 1.0) - model.p_tan(1.0 - h, 1.0)) / (2 * h);
            CHECK(fd_y_pr == doctest::Approx(pw).epsilon(1e-6));
            CHECK(fd_x_pr == doctest::Approx(3 * l + 2 * m).epsilon(1e-6));
            CHECK(fd_y_pt == doctest::Approx(l).epsilon(1e-6).scale(pw));
            CHECK(fd_x_pt == doctest::Approx(3 * l + 2 * m).epsilon(1e-6));
        }
    }
}

TEST_CASE("equal principal pressures on the diagonal") {
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half,
                             BuiltinKind::seth, BuiltinKind::signorini}) {
        const auto model = builtin(kind);
        for (int i = 0; i <= 40; ++i) {
            const double x = 0.1 * std::pow(100.0, i / 40.0);
            const double pr = model.p_rad(x, 1.0), pt = model.p_tan(x, 1.0);
            CHECK(std::abs(pr - pt) <= 1e-10 * std::max({3.0, std::abs(pr), std::abs(pt)}));
        }
    }
}

TEST_CASE("analytic partial derivatives match finite differences") {
    const double h = 1e-6;
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half,
                             BuiltinKind::seth, BuiltinKind::signorini}) {
        const auto model = builtin(kind);
        for (double x = 0.2; x < 3.0; x += 0.4)
            for (double y = 0.2; y < 3.0; y += 0.4) {
                const double fdx = (model.p_rad(x + h, y) - model.p_rad(x - h, y)) / (2 * h);
                const double fdy = (model.p_rad(x, y + h) - model.p_rad(x, y - h)) / (2 * h);
                const double ftx = (model.p_tan(x + h, y) - model.p_tan(x - h, y)) / (2 * h);
                const double fty = (model.p_tan(x, y + h) - model.p_tan(x, y - h)) / (2 * h);
                const double scale = 3.0 + std::abs(fdx) + std::abs(fdy);
                CHECK(model.dx_p_rad(x, y) == doctest::Approx(fdx).epsilon(1e-6).scale(scale));
                CHECK(model.dy_p_rad(x, y) == doctest::Approx(fdy).epsilon(1e-6).scale(scale));
                CHECK(model.dx_p_tan(x, y) == doctest::Approx(ftx).epsilon(1e-6).scale(scale));
                CHECK(model.dy_p_tan(x, y) == doctest::Approx(fty).epsilon(1e-6).scale(scale));
            }
    }
}

TEST_CASE("theta value and continuity through y = 1") {
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half,
                             BuiltinKind::seth, BuiltinKind::signorini}) {
        const auto model = builtin(kind);
        CHECK(model.theta(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));  // 2 mu
        for (double x : {0.5, 1.0, 1.3}) {
            const double at1 = model.theta(x, 1.0);
            CHECK(model.theta(x, 1.0 + 1e-8) == doctest::Approx(at1).epsilon(1e-6));
            CHECK(model.theta(x, 1.0 - 1e-8) == doctest::Approx(at1).epsilon(1e-6));
            // both branches agree at the switch scale
            CHECK(model.theta(x, 1.0 - 2e-6) == doctest::Approx(model.theta(x, 1.0 - 0.9e-6))
                                                    .epsilon(2e-5)
                                                    .scale(1.0));
        }
    }
    // away from the diagonal the direct quotient applies
    const auto svk = builtin(BuiltinKind::svk);
    for (double x : {0.7, 1.0, 2.0}) {
        const double direct = (svk.p_tan(x, 0.5) - svk.p_rad(x, 0.5)) / 0.5;
        CHECK(svk.theta(x, 0.5) == doctest::Approx(direct).epsilon(1e-13));
    }
    // John: P_tan = y P_rad + 2 mu (1 - y), so Theta(x,1) = 2 mu - P_rad(x,1)
    const auto john = builtin(BuiltinKind::john);
    for (double x : {0.5, 1.0, 2.0}) {
        CHECK(john.theta(x, 1.0 - 1e-12) ==
              doctest::Approx(2.0 - john.p_rad(x, 1.0)).epsilon(1e-10));
    }
    CHECK(john.theta(1.0, 1.0 - 1e-12) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("coordinate map between (delta, eta) and (x, y)") {
    const auto svk = builtin(BuiltinKind::svk);
    CHECK(svk.p_rad_de(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(svk.p_tan_de(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(svk.p_rad_de(8.0, 8.0) == doctest::Approx(svk.p_rad(2.0, 1.0)).epsilon(1e-13));
    CHECK(svk.p_tan_de(8.0, 8.0) == doctest::Approx(svk.p_tan(2.0, 1.0)).epsilon(1e-13));
    const auto seth = builtin(BuiltinKind::seth);
    CHECK(seth.p_rad_de(2.0, 1.0) == doctest::Approx(4.5).epsilon(1e-13));
    CHECK_THROWS_AS(svk.p_rad_de(-1.0, 1.0), std::domain_error);
    // derivative map against finite differences in (delta, eta)
    const double h = 1e-6;
    for (double d : {0.8, 1.5, 2.5})
        for (double e : {0.9, 1.4, 2.2}) {
            const double fd = (svk.p_rad_de(d + h, e) - svk.p_rad_de(d - h, e)) / (2 * h);
            const double fe = (svk.p_rad_de(d, e + h) - svk.p_rad_de(d, e - h)) / (2 * h);
            CHECK(svk.dd_p_rad_de(d, e) == doctest::Approx(fd).epsilon(1e-6));
            CHECK(svk.de_p_rad_de(d, e) == doctest::Approx(fe).epsilon(1e-6).scale(3.0));
        }
}

TEST_CASE("chi vanishes for compliant models and flags corrupted ones") {
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john}) {
        const auto model = builtin(kind);
        for (double d : {0.5, 1.0, 2.0, 3.0})
            CHECK(std::abs(model.chi(d)) < 1e-12 * 3.0);
    }
    const auto bad = corrupted_svk();
    CHECK(std::abs(bad.chi(2.0)) > 1e-4);
}

TEST_CASE("isotropic pressure") {
    const auto svk = builtin(BuiltinKind::svk);
    CHECK(svk.p_iso_de(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    // with equal pressures the isotropic pressure is that value
    const auto seth = builtin(BuiltinKind::seth);
    CHECK(seth.p_iso_de(2.0, 2.0) ==
          doctest::Approx(seth.p_rad_de(2.0, 2.0)).epsilon(1e-12));
    const double pr = svk.p_rad_de(2.0, 1.5), pt = svk.p_tan_de(2.0, 1.5);
    CHECK(svk.p_iso_de(2.0, 1.5) == doctest::Approx((pr + 2 * pt) / 3.0).epsilon(1e-13));
}

TEST_CASE("power-law condition checker") {
    for (BuiltinKind kind : {BuiltinKind::svk, BuiltinKind::john, BuiltinKind::hadamard_half,
                             BuiltinKind::signorini}) {
        const auto model = builtin(kind, 1.7, 0.9);
        const auto rep = check_power_law_conditions(model.power_law());
        CHECK(rep.passed);
    }
    CHECK_FALSE(check_power_law_conditions(corrupted_svk().power_law()).passed);
}

TEST_CASE("builtin parameter validation") {
    CHECK_THROWS_AS(make_builtin(BuiltinKind::hadamard_half, LameParameters{-0.5, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_builtin(BuiltinKind::seth, LameParameters{1.0, 0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_builtin(BuiltinKind::svk, LameParameters{1.0, 1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_builtin(BuiltinKind::svk, LameParameters{-3.0, 1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("general Hadamard family reduces to the half case") {
    const auto spec = hadamard_spec(Rational(1, 2), kUnit);
    const auto model = ConstitutiveModel::from_power_law(spec, "had_general");
    const auto half = builtin(BuiltinKind::hadamard_half);
    for (double x : {0.5, 1.0, 1.8})
        for (double y : {0.4, 1.0, 1.6}) {
            CHECK(model.p_rad(x, y) == doctest::Approx(half.p_rad(x, y)).epsilon(1e-13));
            CHECK(model.p_tan(x, y) == doctest::Approx(half.p_tan(x, y)).epsilon(1e-13));
        }
    CHECK_THROWS_AS(hadamard_spec(Rational(1), kUnit), std::invalid_argument);
}

TEST_CASE("fluid spec is barotropic") {
    const LameParameters fl{1.3, 0.0, 1.0};
    const auto model = ConstitutiveModel::from_power_law(fluid_spec(fl), "fluid");
    for (double d : {0.7, 1.0, 1.9})
        for (double e : {0.8, 1.2, 2.4}) {
            // p depends on delta only and pressures coincide
            CHECK(model.p_rad_de(d, e) == doctest::Approx(1.3 * (1.0 - 1.0 / d)).epsilon(1e-12));
            CHECK(model.p_tan_de(d, e) == doctest::Approx(model.p_rad_de(d, e)).epsilon(1e-12));
        }
}
