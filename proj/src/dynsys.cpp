#include "elastoball/dynsys.hpp"

#include <cmath>
#include <stdexcept>

namespace elastoball {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHyperbolicityEps = 1e-10;

StabilityClass classify_spectrum(const std::vector<std::complex<double>>& eigs) {
    bool any_pos = false, any_neg = false;
    for (const auto& e : eigs) {
        if (std::abs(e) < kHyperbolicityEps) return StabilityClass::nonhyperbolic;
        if (e.real() > 0.0) any_pos = true;
        if (e.real() < 0.0) any_neg = true;
    }
    if (any_pos && any_neg) return StabilityClass::saddle;
    return any_pos ? StabilityClass::source : StabilityClass::sink;
}

}  // namespace

std::string to_string(FixedPointLabel label) {
    switch (label) {
        case FixedPointLabel::P: return "P";
        case FixedPointLabel::Q0: return "Q0";
        case FixedPointLabel::Q1: return "Q1";
        case FixedPointLabel::Q2: return "Q2";
        case FixedPointLabel::Lc: return "Lc";
    }
    return "?";
}

std::string to_string(StabilityClass cls) {
    switch (cls) {
        case StabilityClass::sink: return "sink";
        case StabilityClass::source: return "source";
        case StabilityClass::saddle: return "saddle";
        case StabilityClass::nonhyperbolic: return "nonhyperbolic";
    }
    return "?";
}

DynSystem::DynSystem(const ConstitutiveModel& model) : fields_(model) {
    if (exponents().c_exact != Rational(0))
        throw std::invalid_argument(
            "the autonomous flow requires c = 0; use the direct radial integrator for this model");
}

DynSystem::DynSystem(const ConstitutiveModel& model, const ExponentReport& report)
    : fields_(model, report) {
    if (report.c_exact != Rational(0))
        throw std::invalid_argument(
            "the autonomous flow requires c = 0; use the direct radial integrator for this model");
}

std::array<double, 3> DynSystem::field3(const std::array<double, 3>& s) const {
    const auto [x, y, v] = s;
    const double g = fields_.gamma(x, y);
    const double u = fields_.upsilon(x, y);
    const double a = exponents().a, b = exponents().b;
    const double drive = u * (1.0 - y) - v;
    return {-g * (1.0 - y) * x, drive * y, (b * drive + g * (2.0 - (6.0 + a) * (1.0 - y))) * v};
}

std::array<double, 2> DynSystem::field2(double y, double v) const {
    const double g = fields_.gamma0(y);
    const double u = fields_.upsilon0(y);
    const double a = exponents().a, b = exponents().b;
    const double drive = u * (1.0 - y) - v;
    return {drive * y, (b * drive + g * (2.0 - (6.0 + a) * (1.0 - y))) * v};
}

std::array<double, 3> DynSystem::unstable_direction(double x_c) const {
    const double g = fields_.gamma(x_c, 1.0);
    const double u = fields_.upsilon(x_c, 1.0);
    if (!(g > 0.0) || !(u > 0.0))
        throw std::invalid_argument(
            "unstable seeding requires Gamma(x_c,1) > 0 and Upsilon(x_c,1) > 0 (x_c below X_flat)");
    std::array<double, 3> e{-x_c / 2.0, -1.0, 2.0 * g + u};
    const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    return {e[0] / n, e[1] / n, e[2] / n};
}

std::array<double, 3> DynSystem::seed_unstable(double x_c, double eps) const {
    if (!(x_c > 0.0)) throw std::invalid_argument("seed_unstable: x_c must be positive");
    const auto e = unstable_direction(x_c);
    // e points into {y < 1, v > 0} already
    return {x_c + eps * e[0], 1.0 + eps * e[1], eps * e[2]};
}

double DynSystem::radius_from_state(const std::array<double, 3>& s, double kappa_ref) const {
    const auto [x, y, v] = s;
    if (!(x > 0.0)) throw std::domain_error("radius_from_state: x must be positive");
    if (!(y > 0.0)) throw std::domain_error("radius_from_state: y must be positive");
    const double pw = model().lame().p_wave();
    const double a = exponents().a, b = exponents().b;
    const double r2 = 3.0 * pw * v / (4.0 * kPi * kappa_ref * kappa_ref) *
                      std::pow(x, -(6.0 + a)) * std::pow(y, -b);
    return std::sqrt(r2);
}

double DynSystem::v_from_radius(double r, double x, double y, double kappa_ref) const {
    const double pw = model().lame().p_wave();
    const double a = exponents().a, b = exponents().b;
    return 4.0 * kPi * kappa_ref * kappa_ref / (3.0 * pw) * r * r * std::pow(x, 6.0 + a) *
           std::pow(y, b);
}

double DynSystem::y_star() const { return (exponents().a + 4.0) / (exponents().a + 6.0); }

double DynSystem::v_star() const {
    return 2.0 * fields_.upsilon0(y_star()) / (exponents().a + 6.0);
}

double DynSystem::dulac_divergence(double y, double v) const {
    if (!(y > 0.0) || !(y < 1.0) || !(v > 0.0))
        throw std::domain_error("dulac_divergence: requires 0 < y < 1 and v > 0");
    const double b = exponents().b;
    const double phi = std::pow(y, -(1.0 + b)) / v;
    const double u0 = fields_.upsilon0(y);
    const double du0 = fields_.upsilon0_prime(y);
    return -phi * ((b * u0 - y * du0) * (1.0 - y) + y * u0);
}

namespace {

// planar Jacobian by central differences, one-sided at the quadrant boundary
std::array<double, 4> jacobian2(const DynSystem& sys, double y, double v) {
    const double hy = 1e-7 * std::max(1.0, std::abs(y));
    const double hv = 1e-7 * std::max(1.0, std::abs(v));
    auto diff = [](const std::array<double, 2>& hi, const std::array<double, 2>& lo, double h) {
        return std::array<double, 2>{(hi[0] - lo[0]) / h, (hi[1] - lo[1]) / h};
    };
    std::array<double, 2> dy{}, dv{};
    if (y >= hy)
        dy = diff(sys.field2(y + hy, v), sys.field2(y - hy, v), 2.0 * hy);
    else
        dy = diff(sys.field2(y + hy, v), sys.field2(y, v), hy);
    if (v >= hv)
        dv = diff(sys.field2(y, v + hv), sys.field2(y, v - hv), 2.0 * hv);
    else
        dv = diff(sys.field2(y, v + hv), sys.field2(y, v), hv);
    return {dy[0], dv[0], dy[1], dv[1]};  // row-major [[dF1/dy, dF1/dv], [dF2/dy, dF2/dv]]
}

FixedPointReport planar_report(const DynSystem& sys, FixedPointLabel label, double y, double v) {
    FixedPointReport r;
    r.label = label;
    r.location = {0.0, y, v};
    const auto j = jacobian2(sys, y, v);
    r.trace = j[0] + j[3];
    r.det = j[0] * j[3] - j[1] * j[2];
    const std::complex<double> disc = std::sqrt(std::complex<double>(
        r.trace * r.trace - 4.0 * r.det, 0.0));
    r.eigenvalues = {(r.trace + disc) / 2.0, (r.trace - disc) / 2.0};
    r.classification = classify_spectrum(r.eigenvalues);
    return r;
}

}  // namespace

std::vector<FixedPointReport> DynSystem::fixed_points_2d() const {
    std::vector<FixedPointReport> out;
    out.push_back(planar_report(*this, FixedPointLabel::P, y_star(), v_star()));
    out.push_back(planar_report(*this, FixedPointLabel::Q0, 0.0, 0.0));
    out.push_back(planar_report(*this, FixedPointLabel::Q1, 1.0, 0.0));
    const double a = exponents().a, b = exponents().b;
    const double u00 = fields_.upsilon0(0.0);
    const double g00 = fields_.gamma0(0.0);
    if (u00 > (a + 4.0) / b * g00) {
        out.push_back(
            planar_report(*this, FixedPointLabel::Q2, 0.0, u00 - (a + 4.0) / b * g00));
    }
    return out;
}

std::array<std::complex<double>, 3> solve_cubic(double p2, double p1, double p0) {
    // depressed form t^3 + pt + q with x = t - p2/3
    const double s = p2 / 3.0;
    const double p = p1 - p2 * p2 / 3.0;
    const double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::array<std::complex<double>, 3> roots;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + sq);
        const double w = std::cbrt(-q / 2.0 - sq);
        roots[0] = u + w - s;
        const std::complex<double> im(0.0, std::sqrt(3.0) / 2.0 * (u - w));
        roots[1] = std::complex<double>(-(u + w) / 2.0 - s, 0.0) + im;
        roots[2] = std::complex<double>(-(u + w) / 2.0 - s, 0.0) - im;
    } else {
        const double rr = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * rr), -1.0, 1.0));
        const double m = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            roots[k] = m * std::cos((phi + 2.0 * kPi * k) / 3.0) - s;
    }
    return roots;
}

std::array<std::complex<double>, 3> DynSystem::line_point_spectrum(double x_c) const {
    const double h = 1e-5 * std::max(1.0, x_c);
    double j[3][3];
    const std::array<double, 3> base{x_c, 1.0, 0.0};
    for (int col = 0; col < 3; ++col) {
        std::array<double, 3> hi = base, lo = base;
        hi[col] += h;
        lo[col] -= h;
        // the field is polynomial in v, so negative v probes are fine; only
        // x and y must stay on the closed quadrant
        bool one_sided = false;
        if (col < 2 && lo[col] < 0.0) {
            lo = base;
            one_sided = true;
        }
        const auto fhi = field3(hi);
        const auto flo = field3(lo);
        for (int row = 0; row < 3; ++row)
            j[row][col] = (fhi[row] - flo[row]) / (one_sided ? h : 2.0 * h);
    }
    const double tr = j[0][0] + j[1][1] + j[2][2];
    const double m2 = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2] -
                      j[0][2] * j[2][0] + j[1][1] * j[2][2] - j[1][2] * j[2][1];
    const double det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                       j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                       j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    return solve_cubic(-tr, m2, -det);
}

std::vector<DynState> sample_orbit(const OrbitTrajectory& orbit, std::size_t count) {
    std::vector<DynState> out;
    if (count < 2 || orbit.steps.empty()) return out;
    out.reserve(count);
    const double xi0 = orbit.t_begin(), xi1 = orbit.t_end();
    for (std::size_t i = 0; i < count; ++i) {
        const double xi = xi0 + (xi1 - xi0) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
        const auto s = orbit.eval(xi);
        out.push_back({xi, s[0], s[1], s[2]});
    }
    return out;
}

OrbitTrajectory DynSystem::integrate_orbit(const std::array<double, 3>& seed,
                                           const OrbitStop& stop,
                                           const OdeOptions& opts) const {
    auto rhs = [this](double, const State<3>& s, State<3>& ds) {
        const auto f = field3({s[0], s[1], s[2]});
        ds = {f[0], f[1], f[2]};
    };
    OdeControl<3> ctl;
    if (stop.xi_span) ctl.t_end = *stop.xi_span;
    if (stop.stop_on_pressure_zero) {
        ctl.event = [this](double, const State<3>& s) { return model().p_rad(s[0], s[1]); };
    }
    if (stop.converge_tol) {
        const double ys = y_star(), vs = v_star(), tol = *stop.converge_tol;
        ctl.stop_when = [ys, vs, tol](double, const State<3>& s) {
            const double dx = s[0], dy = s[1] - ys, dv = s[2] - vs;
            return std::sqrt(dx * dx + dy * dy + dv * dv) < tol;
        };
    }
    return integrate_ode(rhs, 0.0, State<3>{seed[0], seed[1], seed[2]}, ctl, opts);
}

}  // namespace elastoball
