#pragma once

#include <optional>
#include <stdexcept>

#include "elastoball/model.hpp"

namespace elastoball {

/// Raised when no exponent triple (a, b, c) makes the scaled constitutive
/// functions continuous and nonzero at the vacuum/center boundary.
class ClassificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The exponents making Gamma and Upsilon continuous on the closed quadrant,
/// together with the quantities they were derived from. For stored-energy
/// models gamma_star/beta_star/sigma follow the power-law rules; for direct
/// pressure models they are the equivalent minimal exponents and sigma is the
/// leading coefficient of (lambda+2mu)*Upsilon(0,y) as y -> 0.
struct ExponentReport {
    double a = 0.0, b = 0.0, c = 0.0;
    Rational a_exact{0}, b_exact{0}, c_exact{0};
    Rational gamma_star{0};
    Rational beta_star{0};
    double sigma = 0.0;
    int p_index = -1;                // group attaining gamma_star (stored-energy path)
    std::optional<int> q_index;      // term attaining beta_star within group p
    bool via_stored_energy = false;
};

/// Classifies via the stored-energy exponent rules when the model is
/// hyperelastic, falling back to the direct pressure-expansion analysis
/// otherwise. Throws ClassificationError when the continuity requirement
/// cannot be met.
ExponentReport classify_exponents(const ConstitutiveModel& model);

/// Classification from the pressure expansions alone (the fallback path);
/// exposed so the two routes can be cross-checked on hyperelastic models.
ExponentReport classify_from_pressures(const ConstitutiveModel& model);

/// Gamma and Upsilon: the rescaled constitutive combinations entering the
/// autonomous system. Continuous up to x = 0 and y = 0 via the shifted
/// power expansions; Upsilon has a removable singularity at y = 1.
class ScaledFields {
  public:
    explicit ScaledFields(ConstitutiveModel model);
    ScaledFields(ConstitutiveModel model, const ExponentReport& report);

    const ExponentReport& exponents() const { return report_; }
    const ConstitutiveModel& model() const { return model_; }

    double gamma(double x, double y) const;    // x >= 0, y >= 0
    double upsilon(double x, double y) const;  // x >= 0, y >= 0
    double gamma0(double y) const { return gamma(0.0, y); }
    double upsilon0(double y) const { return upsilon(0.0, y); }

    /// Central finite difference of Upsilon0, step 1e-6 (clipped near the
    /// interval ends).
    double upsilon0_prime(double y) const;

    // Quotient-form evaluations straight from the definition; interior
    // points only. Cross-checks for the shifted expansions.
    double gamma_quotient(double x, double y) const;
    double upsilon_quotient(double x, double y) const;

  private:
    void build();

    ConstitutiveModel model_;  // owned: the fields must outlive any caller temporaries
    ExponentReport report_;
    MonomialSum gamma_poly_;   // (lambda+2mu) * Gamma
    MonomialSum upsilon_num_;  // (lambda+2mu) * (1-y) * Upsilon
    double inv_pwave_ = 1.0;
};

}  // namespace elastoball
