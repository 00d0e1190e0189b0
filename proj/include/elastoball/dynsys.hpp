#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "elastoball/classify.hpp"
#include "elastoball/ode.hpp"

namespace elastoball {

/// One point of the autonomous flow: state (x, y, v) at flow parameter xi.
struct DynState {
    double xi = 0.0;
    double x = 0.0;
    double y = 0.0;
    double v = 0.0;
};

using OrbitTrajectory = Trajectory<3>;

/// Uniformly spaced (in xi) samples of an orbit, endpoints included.
std::vector<DynState> sample_orbit(const OrbitTrajectory& orbit, std::size_t count);

enum class FixedPointLabel { P, Q0, Q1, Q2, Lc };
enum class StabilityClass { sink, source, saddle, nonhyperbolic };

std::string to_string(FixedPointLabel label);
std::string to_string(StabilityClass cls);

struct FixedPointReport {
    FixedPointLabel label = FixedPointLabel::P;
    std::array<double, 3> location{};  // (x, y, v); x = 0 for the planar points
    std::vector<std::complex<double>> eigenvalues;
    StabilityClass classification = StabilityClass::nonhyperbolic;
    double det = 0.0;    // planar Jacobian invariants
    double trace = 0.0;
};

struct OrbitStop {
    std::optional<double> xi_span;       // integrate xi over [xi0, xi0 + span]
    bool stop_on_pressure_zero = false;  // first sign change of P_rad(x, y)
    std::optional<double> converge_tol;  // ||(x, y - y*, v - v*)|| below this
};

/// The autonomous flow in (x, y, v) induced by a classified model, together
/// with the planar boundary flow on {x = 0}. Requires c = 0; models with
/// c != 0 are served by the direct radial integrator instead.
class DynSystem {
  public:
    explicit DynSystem(const ConstitutiveModel& model);
    DynSystem(const ConstitutiveModel& model, const ExponentReport& report);

    const ConstitutiveModel& model() const { return fields_.model(); }
    const ScaledFields& fields() const { return fields_; }
    const ExponentReport& exponents() const { return fields_.exponents(); }

    std::array<double, 3> field3(const std::array<double, 3>& s) const;
    std::array<double, 2> field2(double y, double v) const;

    /// Unstable-manifold seed (x_c, 1, 0) + eps * e3/|e3| with the sign giving
    /// v > 0 and y < 1. Throws std::invalid_argument outside (0, X_flat)
    /// (checked through the Gamma/Upsilon positivity at the seed).
    std::array<double, 3> seed_unstable(double x_c, double eps) const;

    /// Unit-scaled eigenvector e3 = (-x_c/2, -1, 2 Gamma + Upsilon) direction.
    std::array<double, 3> unstable_direction(double x_c) const;

    double radius_from_state(const std::array<double, 3>& s, double kappa_ref) const;
    double v_from_radius(double r, double x, double y, double kappa_ref) const;

    double y_star() const;
    double v_star() const;

    /// Divergence of phi * F with phi = y^-(1+b) / v on the planar flow.
    double dulac_divergence(double y, double v) const;

    std::vector<FixedPointReport> fixed_points_2d() const;

    /// Numerically computed spectrum of the 3-d Jacobian at (x_c, 1, 0).
    std::array<std::complex<double>, 3> line_point_spectrum(double x_c) const;

    OrbitTrajectory integrate_orbit(const std::array<double, 3>& seed, const OrbitStop& stop,
                                    const OdeOptions& opts = {}) const;

  private:
    ScaledFields fields_;
};

/// Roots of a real cubic x^3 + p2 x^2 + p1 x + p0.
std::array<std::complex<double>, 3> solve_cubic(double p2, double p1, double p0);

}  // namespace elastoball
