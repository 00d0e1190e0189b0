#include "elastoball/classify.hpp"

#include <cmath>

namespace elastoball {

namespace {

// (1-y) * x * dP_rad/dx + 2 (P_tan - P_rad); equals (1-y) times the
// combination entering Upsilon, with the quotient singularity cleared.
MonomialSum upsilon_numerator_raw(const ConstitutiveModel& m) {
    const MonomialSum xdx = m.dx_p_rad_sum().shifted(Rational(1), Rational(0));
    MonomialSum u = xdx;
    for (const auto& t : xdx.terms()) u.add(-t.coef, t.px, t.py + Rational(1));
    const MonomialSum diff = m.p_tan_sum() - m.p_rad_sum();
    for (const auto& t : diff.terms()) u.add(2.0 * t.coef, t.px, t.py);
    return u.combined();
}

}  // namespace

ExponentReport classify_from_pressures(const ConstitutiveModel& model) {
    const MonomialSum d = model.dy_p_rad_sum().combined();
    if (d.empty())
        throw ClassificationError("classification failed: P_rad does not depend on delta");
    const Rational ax = d.min_px();
    const Rational by = d.min_py();
    bool corner = false;
    for (const auto& t : d.terms())
        if (t.px == ax && t.py == by) corner = true;
    if (!corner)
        throw ClassificationError(
            "classification failed: no term attains both minimal exponents, Gamma(0,0) = 0");

    ExponentReport r;
    r.a_exact = -ax;
    r.b_exact = -by;
    r.gamma_star = ax - Rational(3);
    r.beta_star = by;

    const MonomialSum u = upsilon_numerator_raw(model);
    // x^0 block of x^a * U: the part that survives at x = 0
    MonomialSum u0;
    for (const auto& t : u.terms())
        if (t.px == ax) u0.add(t.coef, t.px, t.py);
    u0 = u0.combined();
    if (u0.empty())
        throw ClassificationError("classification failed: Upsilon(0, y) vanishes identically");
    const Rational fmin = u0.min_py();
    r.c_exact = Rational(1) - r.b_exact - fmin;
    for (const auto& t : u0.terms())
        if (t.py == fmin) r.sigma = t.coef;
    r.a = r.a_exact.value();
    r.b = r.b_exact.value();
    r.c = r.c_exact.value();
    return r;
}

ExponentReport classify_exponents(const ConstitutiveModel& model) {
    if (!model.hyperelastic()) return classify_from_pressures(model);

    const PowerLawSpec& spec = model.power_law();
    const Rational zero{0}, minus_one{-1};
    ExponentReport r;
    r.via_stored_energy = true;

    int p = -1;
    bool have_beta_star = false;
    Rational beta_star{0};
    for (std::size_t j = 0; j < spec.groups.size(); ++j) {
        bool any = false;
        for (const auto& t : spec.groups[j].terms) {
            if (t.beta == zero || t.beta == minus_one) continue;
            any = true;
            if (!have_beta_star || t.beta < beta_star) {
                beta_star = t.beta;
                have_beta_star = true;
            }
        }
        if (any && p < 0) p = static_cast<int>(j);
    }
    // structural validation guarantees some admissible beta exists
    r.p_index = p;
    r.gamma_star = spec.groups[p].gamma;
    r.beta_star = beta_star;

    double alpha_m1 = 0.0, alpha_0 = 0.0;
    for (std::size_t i = 0; i < spec.groups[p].terms.size(); ++i) {
        const auto& t = spec.groups[p].terms[i];
        if (t.beta == minus_one) alpha_m1 = t.alpha;
        if (t.beta == zero) alpha_0 = t.alpha;
        if (t.beta == beta_star) r.q_index = static_cast<int>(i);
    }
    if (!r.q_index)
        throw ClassificationError(
            "classification failed: the minimal beta exponent is not attained in the leading "
            "group, Gamma(0,0) = 0");

    r.a_exact = Rational(-3) - r.gamma_star;
    r.b_exact = -beta_star;
    const double gs = r.gamma_star.value();
    r.sigma = (3.0 + gs) * alpha_m1 + gs * alpha_0;
    const double sigma_tol =
        1e-12 * (std::abs(3.0 + gs) * std::abs(alpha_m1) + std::abs(gs) * std::abs(alpha_0));
    if (beta_star < zero) {
        r.c_exact = Rational(0);
    } else {
        r.c_exact = std::abs(r.sigma) <= sigma_tol ? Rational(0) : beta_star;
    }
    r.a = r.a_exact.value();
    r.b = r.b_exact.value();
    r.c = r.c_exact.value();
    return r;
}

ScaledFields::ScaledFields(ConstitutiveModel model)
    : model_(std::move(model)), report_(classify_exponents(model_)) {
    build();
}

ScaledFields::ScaledFields(ConstitutiveModel model, const ExponentReport& report)
    : model_(std::move(model)), report_(report) {
    build();
}

void ScaledFields::build() {
    inv_pwave_ = 1.0 / model_.lame().p_wave();
    gamma_poly_ = model_.dy_p_rad_sum().combined().shifted(report_.a_exact, report_.b_exact);
    upsilon_num_ = upsilon_numerator_raw(model_).shifted(
        report_.a_exact, report_.b_exact - Rational(1) + report_.c_exact);
    const Rational zero{0};
    auto check = [](const MonomialSum& s, const char* what) {
        if (s.empty()) return;
        if (s.min_px() < Rational(0) || s.min_py() < Rational(0))
            throw ClassificationError(std::string("classification failed: ") + what +
                                      " is not continuous on the closed quadrant");
    };
    check(gamma_poly_, "Gamma");
    check(upsilon_num_, "Upsilon");
    (void)zero;
}

double ScaledFields::gamma(double x, double y) const {
    if (!(x >= 0.0) || !(y >= 0.0))
        throw std::domain_error("gamma requires x >= 0 and y >= 0");
    return inv_pwave_ * gamma_poly_.eval(x, y);
}

double ScaledFields::upsilon(double x, double y) const {
    if (!(x >= 0.0) || !(y >= 0.0))
        throw std::domain_error("upsilon requires x >= 0 and y >= 0");
    return inv_pwave_ * eval_over_one_minus_y(upsilon_num_, x, y);
}

double ScaledFields::upsilon0_prime(double y) const {
    double h = 1e-6;
    if (y - h < 0.0) h = y / 2.0;
    return (upsilon0(y + h) - upsilon0(y - h)) / (2.0 * h);
}

double ScaledFields::gamma_quotient(double x, double y) const {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("quotient form requires interior (x, y)");
    return inv_pwave_ * std::pow(x, report_.a) * std::pow(y, report_.b) * model_.dy_p_rad(x, y);
}

double ScaledFields::upsilon_quotient(double x, double y) const {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("quotient form requires interior (x, y)");
    return inv_pwave_ * std::pow(x, report_.a) * std::pow(y, report_.b - 1.0 + report_.c) *
           (x * model_.dx_p_rad(x, y) + 2.0 * model_.theta(x, y));
}

}  // namespace elastoball
