#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "elastoball/certify.hpp"
#include "elastoball/dynsys.hpp"

namespace elastoball {

struct SolveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double seed_eps_factor = 1e-8;  // eps = factor * x_c for the unstable seed
    std::size_t grid_points = 2000;
    double xi_max = 200.0;     // safety span for the flow parameter
    double r_max_factor = 1e4;  // radial integration cap, times sqrt(p_wave)/K
    bool experimental = false;  // permit runs outside the certified window
};

class SolveError : public std::runtime_error {
  public:
    enum class Kind { window, no_crossing, hyperbolicity_loss, precondition };
    SolveError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

/// Radial profiles of one equilibrium ball. Grids are log-dense near the
/// center and near the surface; the last point sits exactly on the localized
/// surface event. Immutable once returned; identical inputs produce
/// bit-identical solutions.
struct BallSolution {
    std::vector<double> r, delta, eta, x, y, m, p_rad, p_tan, phi;
    double R = 0.0;
    double M = 0.0;
    double rho_c = 0.0;
    double kappa_ref = 0.0;
    double central_pressure = 0.0;
    double seed_eps = 0.0;
    double rel_tol = 0.0, abs_tol = 0.0;
    std::string model_name;
    std::string method;  // "xi-shooting" or "radial"

    std::size_t size() const { return r.size(); }
    double delta_c() const { return rho_c / kappa_ref; }
};

struct BoundsReport {
    bool all_hold = false;
    // worst margins over the grid; positive means the bound holds
    double hyperbolicity = 0.0;  // min d p_rad / d delta
    double density = 0.0;        // min (rho_c - rho)/rho_c
    double mass_upper = 0.0;     // min ((4pi/3) rho_c r^3 - m)/m
    double mass_lower = 0.0;     // min (m - (4pi/3) max(rho, K) r^3)/m
    double worst_r = 0.0;
    double worst() const;
};

struct CenterRegularityReport {
    bool sufficient_resolution = false;
    double slope_delta_prime = 0.0;      // fitted d ln|delta'| / d ln r, expect ~1
    double slope_delta_minus_eta = 0.0;  // fitted d ln|delta-eta| / d ln r, expect ~2
    double chi_center = 0.0;             // chi(delta_c)
    double iso_center = 0.0;             // d/d eta p_iso at the diagonal, finite differences
    std::size_t inner_points = 0;
};

struct AsymptoticsReport {
    double fitted_exponent = 0.0;    // d ln x / d ln r on the far tail
    double expected_exponent = 0.0;  // -2/(6+a)
    double x_end = 0.0, y_end = 0.0, v_end = 0.0;
    double y_star = 0.0, v_star = 0.0;
    std::size_t tail_points = 0;
    double xi_end = 0.0;
};

struct SweepRow {
    double delta_c = 0.0;
    double R = 0.0;
    double M = 0.0;
    double central_pressure = 0.0;
    double worst_margin = 0.0;
    bool ok = false;
    std::string error;
};

/// Shooting construction: seeds the unstable manifold of (x_c, 1, 0),
/// integrates the autonomous flow, localizes the surface where the radial
/// pressure vanishes and maps the orbit back to radial profiles. Models with
/// c != 0 are delegated to solve_ball_radial.
BallSolution solve_ball(const ConstitutiveModel& model, double rho_c, double kappa_ref,
                        const SolveOptions& opts = {});

/// Direct integration of the radial system in (delta, eta) from a
/// second-order center expansion. Independent of the flow formulation; also
/// the only route for c != 0 models.
BallSolution solve_ball_radial(const ConstitutiveModel& model, double rho_c, double kappa_ref,
                               const SolveOptions& opts = {});

/// Checks the interior inequalities (hyperbolicity, density bound, mass
/// sandwich) at every grid point. Violations are reported, not thrown.
BoundsReport verify_bounds(const ConstitutiveModel& model, const BallSolution& sol);

/// Fits the vanishing rates of delta' and delta - eta near the center and
/// evaluates the regular-center conditions at delta_c.
CenterRegularityReport verify_center_regularity(const ConstitutiveModel& model,
                                                const BallSolution& sol);

/// Continues the orbit past the surface toward the interior sink and fits
/// the decay exponent of x against r on the far tail.
AsymptoticsReport continue_to_vacuum(const ConstitutiveModel& model, double rho_c,
                                     double kappa_ref, double xi_span = 400.0,
                                     const SolveOptions& opts = {});

/// One independent solve per central density; failures are recorded per row
/// and the sweep continues. Entries may run concurrently; output order
/// follows input order.
std::vector<SweepRow> sweep(const ConstitutiveModel& model, const std::vector<double>& delta_cs,
                            double kappa_ref, const SolveOptions& opts = {});

/// Max scaled residual of the radial structure equations over the interior
/// grid, with profile derivatives from local polynomial differentiation.
/// Also includes the potential and mass consistency residuals.
double residual(const ConstitutiveModel& model, const BallSolution& sol);

/// Derivative of a smooth tabulated profile by local 5-point Lagrange
/// differentiation on the (nonuniform) grid.
std::vector<double> profile_derivative(const std::vector<double>& r, const std::vector<double>& f);

}  // namespace elastoball
