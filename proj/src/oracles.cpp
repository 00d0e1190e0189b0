#include "elastoball/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace elastoball {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kFourPiThirds = 4.0 * kPi / 3.0;
}  // namespace

double ExactSolution::delta(double r) const { return cd_ * std::pow(r, pd_); }
double ExactSolution::eta(double r) const { return ce_ * std::pow(r, pd_); }
double ExactSolution::ddelta_dr(double r) const { return cd_ * pd_ * std::pow(r, pd_ - 1.0); }
double ExactSolution::deta_dr(double r) const { return ce_ * pd_ * std::pow(r, pd_ - 1.0); }

double ExactSolution::p_rad(double r) const {
    return q0_r_ + q1_r_ * std::pow(r, e1_) + q2_r_ * std::pow(r, e2_);
}

double ExactSolution::p_tan(double r) const {
    return q0_t_ + q1_t_ * std::pow(r, e1_) + q2_t_ * std::pow(r, e2_);
}

ExactSolution seth_exact(const LameParameters& lame) {
    lame.validate();
    if (!(lame.mu > 0.0)) throw std::invalid_argument("seth_exact: requires mu > 0");
    const double l = lame.lambda, m = lame.mu, K = lame.kappa_ref;
    ExactSolution s;
    s.model_name = "seth";
    s.lame = lame;
    s.d = 3.0 * (9.0 * l + 14.0 * m) / (16.0 * kPi * K * K);
    const double d34 = std::pow(s.d, 0.75);
    s.cd_ = d34 / 2.0;
    s.ce_ = d34;
    s.pd_ = -1.5;
    const double p0 = (3.0 * l + 2.0 * m) / 2.0;
    const double d12 = std::sqrt(s.d);
    s.q0_r_ = -p0;
    s.q1_r_ = (9.0 * l + 2.0 * m) / 8.0 * d12;
    s.q0_t_ = -p0;
    s.q1_t_ = (9.0 * l + 8.0 * m) / 8.0 * d12;
    s.e1_ = -1.0;
    s.e2_ = 0.0;
    s.q2_r_ = s.q2_t_ = 0.0;
    s.radii = {(9.0 * l + 2.0 * m) * std::sqrt(27.0 * l + 42.0 * m) /
               (std::sqrt(kPi) * K * (48.0 * l + 32.0 * m))};
    return s;
}

ExactSolution john_exact(const LameParameters& lame) {
    lame.validate();
    if (!(lame.lambda > 0.0)) throw std::invalid_argument("john_exact: requires lambda > 0");
    const double l = lame.lambda, m = lame.mu, K = lame.kappa_ref;
    ExactSolution s;
    s.model_name = "john";
    s.lame = lame;
    s.d = 11.0 * (l + 2.0 * m) / (6.0 * kPi * K * K);
    const double d35 = std::pow(s.d, 0.6);
    s.cd_ = 0.6 * d35;
    s.ce_ = d35;
    s.pd_ = -1.2;
    // p = 2 mu - c1 (d/r^2)^(1/5) + c2 (d/r^2)^(2/5)
    const double z1 = std::pow(s.d, 0.2), z2 = std::pow(s.d, 0.4);
    s.q0_r_ = 2.0 * m;
    s.q1_r_ = -11.0 / 3.0 * (l + 2.0 * m) * z1;
    s.q2_r_ = (3.0 * l + 4.0 * m) * z2;
    s.q0_t_ = 2.0 * m;
    s.q1_t_ = -11.0 / 5.0 * (l + 2.0 * m) * z1;
    s.q2_t_ = 3.0 / 5.0 * (3.0 * l + 4.0 * m) * z2;
    s.e1_ = -0.4;
    s.e2_ = -0.8;
    const double disc = 121.0 * l * l + 268.0 * l * m + 196.0 * m * m;
    if (!(disc > 0.0)) throw std::invalid_argument("john_exact: discriminant not positive");
    const double num = 6.0 * (3.0 * l + 4.0 * m);
    const double base = 11.0 * (l + 2.0 * m);
    const double r_plus = std::sqrt(s.d) * std::pow(num / (base + std::sqrt(disc)), 2.5);
    const double r_minus = std::sqrt(s.d) * std::pow(num / (base - std::sqrt(disc)), 2.5);
    s.radii = {r_plus, r_minus};
    return s;
}

ExactResidual residual_of_exact_at(const ConstitutiveModel& model, const ExactSolution& exact,
                                   double r) {
    if (model.name() != exact.model_name)
        throw std::invalid_argument("residual_of_exact: model '" + model.name() +
                                    "' does not match exact solution '" + exact.model_name + "'");
    const double K = exact.lame.kappa_ref;
    const double d = exact.delta(r), e = exact.eta(r);
    const double x = std::cbrt(e), y = d / e;
    const double dd_pr = model.dd_p_rad_de(d, e);
    const double de_pr = model.de_p_rad_de(d, e);
    const double prad_minus_ptan = -(1.0 - y) * model.theta(x, y);
    const double t1 = dd_pr * exact.ddelta_dr(r);
    const double t2 = (3.0 / r) * de_pr * (d - e);
    const double t3 = (2.0 / r) * prad_minus_ptan;
    const double t4 = kFourPiThirds * K * K * r * d * e;
    ExactResidual res;
    double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), 1e-300});
    res.delta_eq = std::abs(t1 + t2 + t3 + t4) / scale;
    const double g1 = exact.deta_dr(r);
    const double g2 = (3.0 / r) * (d - e);
    scale = std::max({std::abs(g1), std::abs(g2), 1e-300});
    res.eta_eq = std::abs(g1 - g2) / scale;
    return res;
}

double residual_of_exact(const ConstitutiveModel& model, const ExactSolution& exact,
                         std::span<const double> r_grid) {
    double worst = 0.0;
    for (double r : r_grid) {
        const ExactResidual res = residual_of_exact_at(model, exact, r);
        worst = std::max({worst, res.delta_eq, res.eta_eq});
    }
    return worst;
}

}  // namespace elastoball
