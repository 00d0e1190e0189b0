#include "elastoball/certify.hpp"

#include <algorithm>
#include <cmath>

#include "elastoball/grid_scan.hpp"

namespace elastoball {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
              int max_iter = 200) {
    double flo = f(lo);
    for (int i = 0; i < max_iter && (hi - lo) > rel_tol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

bool ModelCertificate::all_passed() const {
    if (!classified) return false;
    for (const auto& a : assumptions)
        if (!a.passed) return false;
    return true;
}

bool ModelCertificate::passed_non_advisory() const {
    if (!classified) return false;
    for (const auto& a : assumptions)
        if (!a.passed && !a.advisory) return false;
    return true;
}

const AssumptionResult* ModelCertificate::find(const std::string& id) const {
    for (const auto& a : assumptions)
        if (a.id == id) return &a;
    return nullptr;
}

double find_x_flat(const ScaledFields& fields, const CertifyOptions& opts) {
    const auto xs = grid::logspace(1.0, opts.x_scan_max, opts.flat_scan_points);
    double prev = xs[0];
    for (double x : xs) {
        if (fields.gamma(x, 1.0) <= 0.0) {
            auto f = [&](double t) { return fields.gamma(t, 1.0); };
            return bisect(f, prev, x, 1e-12);
        }
        prev = x;
    }
    return kInf;
}

double find_x_sharp(const ConstitutiveModel& model, const CertifyOptions& opts) {
    if (model.builtin()) {
        switch (*model.builtin()) {
            case BuiltinKind::svk:   // P_tan = y^2 P_rad + mu (xy)^-1 (1-y^2)
            case BuiltinKind::john:  // P_tan = y P_rad + 2 mu (1-y)
            case BuiltinKind::seth:  // P_tan = P_rad + mu x^2 (1-y^2)
                return kInf;
            case BuiltinKind::hadamard_half:
                // P_tan - P_rad = (xy)^-1 (1-y^2)(lambda+mu-lambda x^2)
                return std::sqrt((model.lame().lambda + model.lame().mu) / model.lame().lambda);
            case BuiltinKind::signorini:
                break;  // no analytic reduction, fall through to the scan
        }
    }
    const auto xs = grid::logspace(1e-2, opts.x_scan_max, opts.sharp_nx);
    const auto ys = grid::linspace(1.0 / static_cast<double>(opts.sharp_ny + 1),
                                   1.0 - 1.0 / static_cast<double>(opts.sharp_ny + 1),
                                   opts.sharp_ny);
    auto fail_x = [&](double x, double y) {
        return (model.p_rad(x, y) >= 0.0 && model.p_tan(x, y) <= 0.0) ? x : kInf;
    };
    const auto hit = grid::min_scan(xs, ys, fail_x);
    if (hit.value == kInf) return kInf;
    if (hit.i == 0) return hit.value;
    // refine the infimum of failing x between the last clean column and the
    // first failing one, with a 4x finer y grid
    const auto ys_fine = grid::linspace(ys.front() / 4.0, 1.0 - ys.front() / 4.0,
                                        opts.sharp_ny * 4);
    auto column_fails = [&](double x) {
        for (double y : ys_fine)
            if (model.p_rad(x, y) >= 0.0 && model.p_tan(x, y) <= 0.0) return -1.0;
        return 1.0;
    };
    return bisect(column_fails, xs[hit.i - 1], xs[hit.i], 1e-10);
}

double verify_hyper_identity(const ScaledFields& fields, std::span<const double> x_grid) {
    double worst = 0.0;
    for (double x : x_grid)
        worst = std::max(worst, std::abs(fields.upsilon(x, 1.0) - 3.0 * fields.gamma(x, 1.0)));
    return worst;
}

double verify_identity_56(const ScaledFields& fields, std::span<const double> y_grid) {
    const auto& e = fields.exponents();
    double worst = 0.0;
    for (double y : y_grid) {
        const double u0 = fields.upsilon0(y);
        const double du0 = fields.upsilon0_prime(y);
        const double lhs = ((e.b + e.c) * u0 - y * du0) * (1.0 - y) + y * u0;
        const double rhs = std::pow(y, e.c) * ((e.a + 3.0) - e.a * y) * fields.gamma0(y);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double verify_iso_identity(const ConstitutiveModel& model, std::span<const double> delta_grid) {
    const double h = 1e-6;
    double worst = 0.0;
    for (double d : delta_grid) {
        const double diso =
            (model.p_iso_de(d, d + h) - model.p_iso_de(d, d - h)) / (2.0 * h);
        const double dchi = (model.chi(d + h) - model.chi(d - h)) / (2.0 * h);
        const double lhs = 1.5 * diso;
        const double rhs = dchi - model.chi(d) / d;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

ModelCertificate certify(const ConstitutiveModel& model, const CertifyOptions& opts) {
    ModelCertificate cert;
    cert.model_name = model.name();
    cert.grid_nx = opts.grid_nx;
    cert.grid_ny = opts.grid_ny;
    cert.sharp_nx = opts.sharp_nx;
    cert.sharp_ny = opts.sharp_ny;
    cert.x_scan_max_used = opts.x_scan_max;

    const auto& lame = model.lame();
    const double pw = lame.p_wave();
    auto push = [&](AssumptionResult a) { cert.assumptions.push_back(std::move(a)); };

    {  // stress-free reference and linear-elasticity limits
        AssumptionResult a{"A1", "stress-free reference, linear elasticity limit"};
        const double tol = 1e-10 * std::max(1.0, pw);
        double residuals[6] = {
            model.p_rad(1.0, 1.0),
            model.p_tan(1.0, 1.0),
            model.dy_p_rad(1.0, 1.0) - pw,
            model.dx_p_rad(1.0, 1.0) - lame.bulk3(),
            model.dy_p_tan(1.0, 1.0) - lame.lambda,
            model.dx_p_tan(1.0, 1.0) - lame.bulk3(),
        };
        for (double r : residuals) a.worst = std::max(a.worst, std::abs(r));
        a.passed = a.worst <= tol;
        a.witness_x = a.witness_y = 1.0;
        push(std::move(a));
    }

    {  // equal principal pressures on the diagonal
        AssumptionResult a{"A2", "P_rad(x,1) = P_tan(x,1)"};
        const auto xs = grid::logspace(0.1, 10.0, 201);
        auto rel = [&](double x) {
            const double pr = model.p_rad(x, 1.0), pt = model.p_tan(x, 1.0);
            return -std::abs(pr - pt) / std::max({pw, std::abs(pr), std::abs(pt)});
        };
        const auto hit = grid::min_scan(xs, rel);
        a.worst = -hit.value;
        a.witness_x = xs[hit.i];
        a.witness_y = 1.0;
        a.passed = a.worst <= 1e-10;
        push(std::move(a));
    }

    {  // classification
        AssumptionResult a{"A3", "scaled constitutive functions extend to the boundary"};
        try {
            cert.exponents = classify_exponents(model);
            cert.classified = true;
            a.passed = true;
        } catch (const ClassificationError& e) {
            cert.classification_message = e.what();
            a.passed = false;
            a.detail = e.what();
        }
        push(std::move(a));
    }

    if (!cert.classified) {
        for (const char* id : {"A4", "A5i", "A5ii", "A6", "A7", "A8"}) {
            AssumptionResult a{id, "skipped: classification unavailable"};
            a.passed = false;
            a.detail = "classification unavailable";
            push(std::move(a));
        }
        cert.delta_max = 0.0;
        return cert;
    }

    const ExponentReport& exps = cert.exponents;
    const bool planar_advisory = exps.c_exact != Rational(0);
    ScaledFields fields(model, exps);

    {  // exponent window
        AssumptionResult a{"A4", "a > -4, b > 0, c = 0"};
        a.advisory = planar_advisory;
        a.passed = exps.a > -4.0 && exps.b_exact > Rational(0) && exps.c_exact == Rational(0);
        a.detail = "a=" + std::to_string(exps.a) + " b=" + std::to_string(exps.b) +
                   " c=" + std::to_string(exps.c);
        push(std::move(a));
    }

    cert.x_flat = find_x_flat(fields, opts);
    const double x_hi = std::min(cert.x_flat, opts.grid_x_cap);

    {  // Gamma(x,1) > 0 below X_flat
        AssumptionResult a{"A5i", "Gamma(x,1) > 0 on (0, X_flat)"};
        const auto xs = grid::logspace(1e-4, x_hi * (1.0 - 1e-9), 400);
        auto g = [&](double x) { return fields.gamma(x, 1.0); };
        const auto hit = grid::min_scan(xs, g);
        a.worst = hit.value;
        a.witness_x = xs[hit.i];
        a.witness_y = 1.0;
        a.passed = hit.value > 0.0;
        push(std::move(a));
    }

    {  // Upsilon(x,1) > 0 below X_flat
        AssumptionResult a{"A5ii", "Upsilon(x,1) > 0 on (0, X_flat)"};
        const auto xs = grid::logspace(1e-4, x_hi * (1.0 - 1e-9), 400);
        auto u = [&](double x) { return fields.upsilon(x, 1.0); };
        const auto hit = grid::min_scan(xs, u);
        a.worst = hit.value;
        a.witness_x = xs[hit.i];
        a.witness_y = 1.0;
        a.passed = hit.value > 0.0;
        push(std::move(a));
    }

    {  // positivity of Gamma on the quadrant slab and the planar inequalities
        AssumptionResult a{"A6", "Gamma > 0 on [0,X_flat)x[0,1); Upsilon0 and planar inequality"};
        a.advisory = planar_advisory;
        const auto xs = grid::linspace(0.0, x_hi * (1.0 - 1e-9), opts.grid_nx);
        const auto ys = grid::linspace(0.0, 1.0 - 1e-9, opts.grid_ny);
        const auto hitg =
            grid::min_scan(xs, ys, [&](double x, double y) { return fields.gamma(x, y); });
        const auto ys01 = grid::linspace(1e-6, 1.0 - 1e-6, 400);
        const auto hitu = grid::min_scan(ys01, [&](double y) { return fields.upsilon0(y); });
        const auto hitd = grid::min_scan(ys01, [&](double y) {
            const double u0 = fields.upsilon0(y);
            const double du0 = fields.upsilon0_prime(y);
            return (exps.b * u0 - y * du0) * (1.0 - y) + y * u0;
        });
        a.worst = std::min({hitg.value, hitu.value, hitd.value});
        if (hitg.value <= std::min(hitu.value, hitd.value)) {
            a.witness_x = xs[hitg.i];
            a.witness_y = ys[hitg.j];
        } else {
            a.witness_x = 0.0;
            a.witness_y = ys01[(hitu.value < hitd.value ? hitu : hitd).i];
        }
        a.passed = a.worst > 0.0;
        a.detail = "min Gamma=" + std::to_string(hitg.value) +
                   " min Upsilon0=" + std::to_string(hitu.value) +
                   " min planar=" + std::to_string(hitd.value);
        push(std::move(a));
    }

    cert.x_sharp = find_x_sharp(model, opts);

    {  // tangential pressure positive where the radial pressure is
        AssumptionResult a{"A7", "P_rad >= 0 on (0,X_sharp)x(0,1) implies P_tan > 0"};
        a.worst = cert.x_sharp;
        a.passed = cert.x_sharp > 1.0;
        push(std::move(a));
    }

    const double x_cut = std::min(cert.x_flat, cert.x_sharp);
    cert.delta_max = std::isinf(x_cut) ? kInf : x_cut * x_cut * x_cut;

    {  // sign structure of the radial pressure
        AssumptionResult a{"A8", "P_rad(x,1) > 0 on (1,X); P_rad(1,y) < 0 on (0,1)"};
        const double hi = std::min(x_cut, opts.grid_x_cap);
        double pos = kInf;
        double wx = 1.0;
        if (hi > 1.0) {
            const auto xs = grid::logspace(1.0 + 1e-9, hi * (1.0 - 1e-9), 400);
            const auto hit =
                grid::min_scan(xs, [&](double x) { return model.p_rad(x, 1.0); });
            pos = hit.value;
            wx = xs[hit.i];
        }
        const auto ys = grid::linspace(1e-6, 1.0 - 1e-6, 400);
        const auto hitn = grid::min_scan(ys, [&](double y) { return -model.p_rad(1.0, y); });
        const double neg = -hitn.value;  // max of P_rad(1,y); must be negative
        a.worst = std::min(pos, -neg);
        a.witness_x = pos < -neg ? wx : 1.0;
        a.witness_y = pos < -neg ? 1.0 : ys[hitn.i];
        a.passed = pos > 0.0 && neg < 0.0;
        a.detail = "min P_rad(x,1)=" + std::to_string(pos) +
                   " max P_rad(1,y)=" + std::to_string(neg);
        push(std::move(a));
    }

    return cert;
}

}  // namespace elastoball
