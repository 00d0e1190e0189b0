#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace elastoball {

template <std::size_t N>
using State = std::array<double, N>;

enum class StopReason {
    t_end,
    event,
    predicate,
    step_underflow,
    max_steps,
    monitor_reject,
};

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_init = 0.0;  // 0 -> automatic
    double h_max = 0.0;   // 0 -> unbounded
    std::size_t max_steps = 2'000'000;
    double event_rel_tol = 1e-12;
    int event_max_iter = 80;
};

template <std::size_t N>
struct StepRecord {
    double t0 = 0.0, t1 = 0.0;
    State<N> y0{}, y1{}, f0{}, f1{};
};

namespace ode_detail {

// Dormand-Prince 5(4) tableau
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace ode_detail

/// One 5th-order step from (t, y, f = rhs(t,y)) of size h. Fills y_out and
/// f_out = rhs(t+h, y_out) (FSAL) and returns the mixed-tolerance error norm.
template <std::size_t N, class RHS>
double dp54_step(RHS&& rhs, double t, const State<N>& y, const State<N>& f, double h,
                 const OdeOptions& opts, State<N>& y_out, State<N>& f_out) {
    using namespace ode_detail;
    State<N> k2, k3, k4, k5, k6, tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * f[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * f[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a41 * f[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a51 * f[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a61 * f[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
        y_out[i] = y[i] + h * (b1 * f[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y_out, f_out);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * f_out[i]);
        const double sc =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_out[i]));
        err += (e / sc) * (e / sc);
    }
    return std::sqrt(err / static_cast<double>(N));
}

/// State inside a recorded step at local-truncation accuracy: one fresh
/// 5th-order sub-step from the step start. Preferred over the Hermite
/// interpolant wherever the value feeds further computation.
template <std::size_t N, class RHS>
State<N> substep_state(RHS&& rhs, const StepRecord<N>& rec, double t, const OdeOptions& opts) {
    if (t <= rec.t0) return rec.y0;
    if (t >= rec.t1) return rec.y1;
    State<N> y, f;
    dp54_step(rhs, rec.t0, rec.y0, rec.f0, t - rec.t0, opts, y, f);
    return y;
}

template <std::size_t N>
class Trajectory {
  public:
    std::vector<StepRecord<N>> steps;
    StopReason reason = StopReason::t_end;
    std::string message;
    std::optional<double> event_t;

    double t_begin() const { return steps.front().t0; }
    double t_end() const { return steps.back().t1; }
    const State<N>& first_state() const { return steps.front().y0; }
    const State<N>& last_state() const { return steps.back().y1; }

    const StepRecord<N>& step_containing(double t) const {
        std::size_t lo = 0, hi = steps.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (steps[mid].t1 < t)
                lo = mid + 1;
            else
                hi = mid;
        }
        return steps[lo];
    }

    /// Cubic Hermite interpolation on the accepted steps.
    State<N> eval(double t) const {
        const StepRecord<N>& s = step_containing(t);
        const double h = s.t1 - s.t0;
        if (h == 0.0) return s.y0;
        const double u = (t - s.t0) / h;
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        const double h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u);
        const double h11 = u * u * (u - 1);
        State<N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = h00 * s.y0[i] + h * h10 * s.f0[i] + h01 * s.y1[i] + h * h11 * s.f1[i];
        return out;
    }
};

template <std::size_t N>
struct OdeControl {
    std::optional<double> t_end;
    /// Stop at the first + -> <=0 crossing of this scalar, localized by
    /// bisection on 5th-order sub-steps.
    std::function<double(double, const State<N>&)> event;
    /// Stop once this returns true (checked at accepted steps).
    std::function<bool(double, const State<N>&)> stop_when;
    /// Invariant monitor; returning false aborts with monitor_reject.
    std::function<bool(double, const State<N>&)> monitor;
};

template <std::size_t N, class RHS>
Trajectory<N> integrate_ode(RHS&& rhs, double t0, State<N> y0, const OdeControl<N>& ctl,
                            const OdeOptions& opts = {}) {
    Trajectory<N> traj;
    State<N> f0;
    rhs(t0, y0, f0);

    const double span_hint = ctl.t_end ? (*ctl.t_end - t0) : 1.0;
    double h_max = opts.h_max > 0 ? opts.h_max
                                  : (ctl.t_end ? std::abs(span_hint)
                                               : std::numeric_limits<double>::infinity());
    double h;
    if (opts.h_init > 0.0) {
        h = opts.h_init;
    } else {
        // standard startup heuristic (one explicit Euler probe)
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opts.abs_tol + opts.rel_tol * std::abs(y0[i]);
            d0 += (y0[i] / sc) * (y0[i] / sc);
            d1 += (f0[i] / sc) * (f0[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, h_max);
        State<N> y1, f1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h0 * f0[i];
        rhs(t0 + h0, y1, f1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opts.abs_tol + opts.rel_tol * std::abs(y0[i]);
            d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm > 1e-15 ? std::pow(0.01 / dm, 0.2) : std::max(1e-6, h0 * 1e-3);
        h = std::min({100.0 * h0, h1, h_max});
    }

    double t = t0;
    double g_prev = ctl.event ? ctl.event(t0, y0) : 0.0;
    for (std::size_t n = 0; n < opts.max_steps; ++n) {
        if (ctl.t_end && t + h > *ctl.t_end) h = *ctl.t_end - t;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-3)) {
            traj.reason = StopReason::step_underflow;
            traj.message = "step size underflow at t = " + std::to_string(t);
            if (traj.steps.empty()) traj.steps.push_back({t, t, y0, y0, f0, f0});
            return traj;
        }
        State<N> y1, f1;
        const double err = dp54_step(rhs, t, y0, f0, h, opts, y1, f1);
        if (!std::isfinite(err)) {  // trial state left the domain of the RHS
            h *= 0.2;
            continue;
        }
        if (err > 1.0) {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            continue;
        }
        StepRecord<N> rec{t, t + h, y0, y1, f0, f1};
        traj.steps.push_back(rec);

        if (ctl.monitor && !ctl.monitor(rec.t1, y1)) {
            traj.reason = StopReason::monitor_reject;
            traj.message = "invariant monitor rejected the state at t = " + std::to_string(rec.t1);
            return traj;
        }
        if (ctl.event) {
            const double g1 = ctl.event(rec.t1, y1);
            if (g_prev > 0.0 && g1 <= 0.0) {
                // bisection on 5th-order sub-steps within the bracketing step
                double lo = rec.t0, hi = rec.t1;
                State<N> y_ev = y1;
                for (int it = 0; it < opts.event_max_iter &&
                                 (hi - lo) > opts.event_rel_tol * std::max(std::abs(hi), 1.0);
                     ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const State<N> ym = substep_state(rhs, rec, mid, opts);
                    if (ctl.event(mid, ym) > 0.0)
                        lo = mid;
                    else {
                        hi = mid;
                        y_ev = ym;
                    }
                }
                State<N> f_ev;
                rhs(hi, y_ev, f_ev);
                traj.steps.back() = {rec.t0, hi, rec.y0, y_ev, rec.f0, f_ev};
                traj.reason = StopReason::event;
                traj.event_t = hi;
                return traj;
            }
            g_prev = g1;
        }
        if (ctl.stop_when && ctl.stop_when(rec.t1, y1)) {
            traj.reason = StopReason::predicate;
            return traj;
        }
        t = rec.t1;
        y0 = y1;
        f0 = f1;
        if (ctl.t_end && t >= *ctl.t_end) {
            traj.reason = StopReason::t_end;
            return traj;
        }
        h = std::min(h * std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0), h_max);
    }
    traj.reason = StopReason::max_steps;
    traj.message = "maximum step count exceeded";
    return traj;
}

}  // namespace elastoball
