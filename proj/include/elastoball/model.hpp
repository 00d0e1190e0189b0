#pragma once

#include <memory>
#include <optional>
#include <string>

#include "elastoball/lame.hpp"
#include "elastoball/monomial.hpp"
#include "elastoball/power_law.hpp"

namespace elastoball {

enum class BuiltinKind { svk, john, hadamard_half, seth, signorini };

std::string to_string(BuiltinKind kind);
BuiltinKind builtin_from_string(const std::string& name);

/// Evaluable constitutive model in the (x, y) = (eta^(1/3), delta/eta)
/// variables. Hyperelastic models carry their stored energy spec and derive
/// both principal pressures from it; the Seth model carries its pressure
/// expansions directly.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class ConstitutiveModel {
  public:
    static ConstitutiveModel from_power_law(const PowerLawSpec& spec, std::string name,
                                            bool require_conditions = true);
    static ConstitutiveModel from_pressures(MonomialSum p_rad, MonomialSum p_tan,
                                            const LameParameters& lame, std::string name);

    const std::string& name() const { return name_; }
    const LameParameters& lame() const { return lame_; }
    bool hyperelastic() const { return spec_.has_value(); }
    const PowerLawSpec& power_law() const;
    std::optional<BuiltinKind> builtin() const { return builtin_; }

    /// W(x,y); throws std::logic_error for non-hyperelastic models.
    double stored_energy(double x, double y) const;

    double p_rad(double x, double y) const;
    double p_tan(double x, double y) const;
    double dx_p_rad(double x, double y) const;
    double dy_p_rad(double x, double y) const;
    double dx_p_tan(double x, double y) const;
    double dy_p_tan(double x, double y) const;

    /// Theta(x,y) = (P_tan - P_rad)/(1 - y), removable singularity at y = 1.
    double theta(double x, double y) const;

    /// (p_rad + 2 p_tan)/3 at mapped coordinates.
    double p_iso(double x, double y) const;

    // (delta, eta) interface; maps to x = eta^(1/3), y = delta/eta.
    double p_rad_de(double delta, double eta) const;
    double p_tan_de(double delta, double eta) const;
    double p_iso_de(double delta, double eta) const;
    double dd_p_rad_de(double delta, double eta) const;  // d/d delta
    double de_p_rad_de(double delta, double eta) const;  // d/d eta

    /// chi(delta) = p_tan(delta,delta) - p_rad(delta,delta); identically zero
    /// when the principal pressures agree on the diagonal.
    double chi(double delta) const;

    // Raw expansions of the pressures, for the classification machinery.
    const MonomialSum& p_rad_sum() const { return prad_; }
    const MonomialSum& p_tan_sum() const { return ptan_; }
    const MonomialSum& dy_p_rad_sum() const { return dyprad_; }
    const MonomialSum& dx_p_rad_sum() const { return dxprad_; }

  private:
    ConstitutiveModel() = default;
    void finalize();
    static void check_domain(double x, double y);

    std::string name_;
    LameParameters lame_;
    std::optional<PowerLawSpec> spec_;
    std::optional<BuiltinKind> builtin_;

    MonomialSum energy_;  // without w0; only for hyperelastic models
    double w0_ = 0.0;
    MonomialSum prad_, ptan_;
    MonomialSum dxprad_, dyprad_, dxptan_, dyptan_;
    MonomialSum theta_num_;  // P_tan - P_rad, combined

    friend ConstitutiveModel make_builtin(BuiltinKind, const LameParameters&);
};

/// Built-in material models with the Lame parameters filled into the exact
/// coefficient patterns. hadamard_half additionally requires lambda > 0.
ConstitutiveModel make_builtin(BuiltinKind kind, const LameParameters& lame);

/// Hadamard stored energy for general exponent k (k != 0, k != 1). Used for
/// exponent classification; only k = 1/2 is wired up as a solvable built-in.
PowerLawSpec hadamard_spec(const Rational& k, const LameParameters& lame);

/// Barotropic fluid with p(delta) = lambda (1 - 1/delta): stored energy
/// independent of eta (requires mu = 0). Used for fluid-limit checks.
PowerLawSpec fluid_spec(const LameParameters& lame);

}  // namespace elastoball
