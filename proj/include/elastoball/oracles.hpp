#pragma once

#include <span>
#include <string>
#include <vector>

#include "elastoball/model.hpp"

namespace elastoball {

/// Closed-form self-similar equilibrium: power-of-r profiles that solve the
/// radial system exactly, with an irregular center. Ground truth for residual
/// and surface-event tests; never a regularity oracle.
struct ExactSolution {
    std::string model_name;  // "seth" or "john"
    LameParameters lame;
    double d = 0.0;              // similarity constant
    std::vector<double> radii;   // {R} for seth, {R_plus, R_minus} for john

    double delta(double r) const;
    double eta(double r) const;
    double p_rad(double r) const;
    double p_tan(double r) const;
    // analytic radial derivatives (powers of r, no differencing)
    double ddelta_dr(double r) const;
    double deta_dr(double r) const;

  private:
    friend ExactSolution seth_exact(const LameParameters&);
    friend ExactSolution john_exact(const LameParameters&);
    // profile exponents and amplitudes: delta = cd * r^pd, eta = ce * r^pd
    double cd_ = 0.0, ce_ = 0.0, pd_ = 0.0;
    // pressures: p = q0 + q1 r^e1 + q2 r^e2
    double q0_r_ = 0.0, q1_r_ = 0.0, q2_r_ = 0.0;
    double q0_t_ = 0.0, q1_t_ = 0.0, q2_t_ = 0.0;
    double e1_ = 0.0, e2_ = 0.0;
};

ExactSolution seth_exact(const LameParameters& lame);
ExactSolution john_exact(const LameParameters& lame);  // requires lambda > 0

struct ExactResidual {
    double delta_eq = 0.0;  // scaled residual of the compression equation
    double eta_eq = 0.0;    // scaled residual of the mean-density equation
};

/// Substitutes the exact profiles and their analytic derivatives into the
/// radial system in (delta, eta) form at one radius. Throws
/// std::invalid_argument when model and exact solution do not belong together.
ExactResidual residual_of_exact_at(const ConstitutiveModel& model, const ExactSolution& exact,
                                   double r);

/// Max scaled residual over the grid.
double residual_of_exact(const ConstitutiveModel& model, const ExactSolution& exact,
                         std::span<const double> r_grid);

}  // namespace elastoball
