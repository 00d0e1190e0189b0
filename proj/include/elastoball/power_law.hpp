#pragma once

#include <string>
#include <vector>

#include "elastoball/lame.hpp"
#include "elastoball/monomial.hpp"
#include "elastoball/rational.hpp"

namespace elastoball {

struct PowerLawTerm {
    double alpha = 0.0;  // coefficient, pressure units
    Rational beta{0};    // exact exponent of y
};

struct PowerLawGroup {
    Rational gamma{0};  // exact exponent of x
    std::vector<PowerLawTerm> terms;
};

/// Stored energy function W(x,y) = sum_j x^gamma_j sum_i alpha_ij y^beta_ij + w0
/// in the variables x = eta^(1/3), y = delta/eta.
struct PowerLawSpec {
    std::vector<PowerLawGroup> groups;
    double w0 = 0.0;
    LameParameters lame;

    MonomialSum energy_sum() const;  // without the w0 offset
};

/// Numeric residuals of the compatibility conditions tying the coefficients
/// to the Lame parameters (stress-free reference, linear-elasticity limit,
/// equal principal pressures on the diagonal).
struct PowerLawConditionReport {
    double zero_energy = 0.0;        // sum alpha + w0
    double zero_first_moment = 0.0;  // sum alpha*gamma
    double gamma_second_moment = 0.0;  // sum alpha*gamma^2 - 3(3 lambda + 2 mu)
    double beta_second_moment = 0.0;   // sum alpha*beta^2 - (lambda + 2 mu)
    double worst_group_balance = 0.0;  // max_j |sum_i alpha(beta - gamma/3)|
    double tolerance = 0.0;
    bool passed = false;
};

/// Structural validation of the exponent layout (ordering, nonzero
/// coefficients, single-term group rule, at least one beta outside {0,-1}).
/// Throws std::invalid_argument on violation.
void validate_power_law_structure(const PowerLawSpec& spec);

/// Checks the coefficient conditions with absolute tolerance
/// 1e-10 * max(1, lambda + 2 mu).
PowerLawConditionReport check_power_law_conditions(const PowerLawSpec& spec);

/// Collects (gamma, beta, alpha) triples into a normalized spec: groups merged
/// by equal gamma, terms merged by equal beta, zero coefficients dropped,
/// everything sorted. Convenient for assembling the built-in models at
/// arbitrary Lame parameters.
class PowerLawSpecBuilder {
  public:
    explicit PowerLawSpecBuilder(const LameParameters& lame) { spec_.lame = lame; }
    PowerLawSpecBuilder& term(Rational gamma, double alpha, Rational beta);
    PowerLawSpecBuilder& offset(double w0);
    PowerLawSpec build() const;  // validates structure

  private:
    PowerLawSpec spec_;
    std::vector<std::tuple<Rational, Rational, double>> raw_;
};

}  // namespace elastoball
