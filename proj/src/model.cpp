#include "elastoball/model.hpp"

#include <cmath>
#include <stdexcept>

namespace elastoball {

std::string to_string(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::svk: return "svk";
        case BuiltinKind::john: return "john";
        case BuiltinKind::hadamard_half: return "hadamard_half";
        case BuiltinKind::seth: return "seth";
        case BuiltinKind::signorini: return "signorini";
    }
    return "?";
}

BuiltinKind builtin_from_string(const std::string& name) {
    if (name == "svk") return BuiltinKind::svk;
    if (name == "john") return BuiltinKind::john;
    if (name == "hadamard_half" || name == "hadamard") return BuiltinKind::hadamard_half;
    if (name == "seth") return BuiltinKind::seth;
    if (name == "signorini") return BuiltinKind::signorini;
    throw std::invalid_argument("unknown builtin model '" + name + "'");
}

void ConstitutiveModel::check_domain(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("constitutive evaluation requires x > 0 and y > 0");
}

ConstitutiveModel ConstitutiveModel::from_power_law(const PowerLawSpec& spec, std::string name,
                                                    bool require_conditions) {
    validate_power_law_structure(spec);
    if (require_conditions) {
        const auto rep = check_power_law_conditions(spec);
        if (!rep.passed)
            throw std::invalid_argument("power-law spec '" + name +
                                        "' violates the coefficient conditions");
    }
    ConstitutiveModel m;
    m.name_ = std::move(name);
    m.lame_ = spec.lame;
    m.spec_ = spec;
    m.energy_ = spec.energy_sum();
    m.w0_ = spec.w0;
    // P_rad = x^3 y^2 dW/dy, P_tan = (x^4 y dW/dx - x^3 y^2 dW/dy)/2
    const MonomialSum wy = m.energy_.dy();
    const MonomialSum wx = m.energy_.dx();
    m.prad_ = wy.shifted(Rational(3), Rational(2)).combined();
    m.ptan_ = (wx.shifted(Rational(4), Rational(1)).scaled(0.5) -
               wy.shifted(Rational(3), Rational(2)).scaled(0.5))
                  .combined();
    m.finalize();
    return m;
}

ConstitutiveModel ConstitutiveModel::from_pressures(MonomialSum p_rad, MonomialSum p_tan,
                                                    const LameParameters& lame,
                                                    std::string name) {
    lame.validate();
    ConstitutiveModel m;
    m.name_ = std::move(name);
    m.lame_ = lame;
    m.prad_ = p_rad.combined();
    m.ptan_ = p_tan.combined();
    m.finalize();
    return m;
}

void ConstitutiveModel::finalize() {
    dxprad_ = prad_.dx();
    dyprad_ = prad_.dy();
    dxptan_ = ptan_.dx();
    dyptan_ = ptan_.dy();
    theta_num_ = (ptan_ - prad_).combined();
}

const PowerLawSpec& ConstitutiveModel::power_law() const {
    if (!spec_) throw std::logic_error("model '" + name_ + "' has no stored energy spec");
    return *spec_;
}

double ConstitutiveModel::stored_energy(double x, double y) const {
    check_domain(x, y);
    if (!spec_) throw std::logic_error("model '" + name_ + "' has no stored energy spec");
    return energy_.eval(x, y) + w0_;
}

double ConstitutiveModel::p_rad(double x, double y) const {
    check_domain(x, y);
    return prad_.eval(x, y);
}

double ConstitutiveModel::p_tan(double x, double y) const {
    check_domain(x, y);
    return ptan_.eval(x, y);
}

double ConstitutiveModel::dx_p_rad(double x, double y) const {
    check_domain(x, y);
    return dxprad_.eval(x, y);
}

double ConstitutiveModel::dy_p_rad(double x, double y) const {
    check_domain(x, y);
    return dyprad_.eval(x, y);
}

double ConstitutiveModel::dx_p_tan(double x, double y) const {
    check_domain(x, y);
    return dxptan_.eval(x, y);
}

double ConstitutiveModel::dy_p_tan(double x, double y) const {
    check_domain(x, y);
    return dyptan_.eval(x, y);
}

double ConstitutiveModel::theta(double x, double y) const {
    check_domain(x, y);
    return eval_over_one_minus_y(theta_num_, x, y);
}

double ConstitutiveModel::p_iso(double x, double y) const {
    return (p_rad(x, y) + 2.0 * p_tan(x, y)) / 3.0;
}

double ConstitutiveModel::p_rad_de(double delta, double eta) const {
    if (!(delta > 0.0) || !(eta > 0.0))
        throw std::domain_error("constitutive evaluation requires delta > 0 and eta > 0");
    return p_rad(std::cbrt(eta), delta / eta);
}

double ConstitutiveModel::p_tan_de(double delta, double eta) const {
    if (!(delta > 0.0) || !(eta > 0.0))
        throw std::domain_error("constitutive evaluation requires delta > 0 and eta > 0");
    return p_tan(std::cbrt(eta), delta / eta);
}

double ConstitutiveModel::p_iso_de(double delta, double eta) const {
    return (p_rad_de(delta, eta) + 2.0 * p_tan_de(delta, eta)) / 3.0;
}

double ConstitutiveModel::dd_p_rad_de(double delta, double eta) const {
    // d/d delta = (dP_rad/dy) / eta
    const double x = std::cbrt(eta);
    return dy_p_rad(x, delta / eta) / eta;
}

double ConstitutiveModel::de_p_rad_de(double delta, double eta) const {
    const double x = std::cbrt(eta);
    const double y = delta / eta;
    return dx_p_rad(x, y) / (3.0 * x * x) - y * dy_p_rad(x, y) / eta;
}

double ConstitutiveModel::chi(double delta) const {
    if (!(delta > 0.0)) throw std::domain_error("chi requires delta > 0");
    const double x = std::cbrt(delta);
    return p_tan(x, 1.0) - p_rad(x, 1.0);
}

}  // namespace elastoball
