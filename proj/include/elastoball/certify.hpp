#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "elastoball/classify.hpp"

namespace elastoball {

struct CertifyOptions {
    double x_scan_max = 1e3;          // cap of the root scan for X_flat
    std::size_t flat_scan_points = 2000;
    std::size_t grid_nx = 200;        // evidence grids
    std::size_t grid_ny = 200;
    std::size_t sharp_nx = 400;       // region scan for X_sharp
    std::size_t sharp_ny = 400;
    double grid_x_cap = 10.0;         // x cap of evidence grids when a threshold is infinite
    double fd_step = 1e-6;
};

struct AssumptionResult {
    AssumptionResult() = default;
    AssumptionResult(std::string id_, std::string title_)
        : id(std::move(id_)), title(std::move(title_)) {}

    std::string id;
    std::string title;
    bool passed = false;
    bool advisory = false;  // assumption only feeds the planar-flow argument (c != 0 models)
    double worst = 0.0;     // worst margin (positive = satisfied) or residual
    double witness_x = 0.0;
    double witness_y = 0.0;
    std::string detail;
};

struct ModelCertificate {
    std::string model_name;
    bool classified = false;
    std::string classification_message;
    ExponentReport exponents;

    double x_flat = std::numeric_limits<double>::infinity();
    double x_sharp = std::numeric_limits<double>::infinity();
    double delta_max = std::numeric_limits<double>::infinity();  // min(x_flat, x_sharp)^3

    double x_scan_max_used = 0.0;
    std::size_t sharp_nx = 0, sharp_ny = 0, grid_nx = 0, grid_ny = 0;

    std::vector<AssumptionResult> assumptions;

    bool all_passed() const;           // every assumption, advisory ones included
    bool passed_non_advisory() const;  // ignores advisory failures
    const AssumptionResult* find(const std::string& id) const;
};

/// Smallest root of Gamma(x, 1) on (1, x_scan_max]; +infinity past the cap.
/// Bracketing scan on a log grid, then bisection to relative 1e-12.
double find_x_flat(const ScaledFields& fields, const CertifyOptions& opts = {});

/// Threshold of tangential-pressure positivity. Built-in models use their
/// analytic reductions; otherwise the region {P_rad >= 0} x (0,1) is grid
/// scanned for P_tan <= 0 and the infimum of failing x refined by bisection.
double find_x_sharp(const ConstitutiveModel& model, const CertifyOptions& opts = {});

/// Runs the full assumption battery with grid evidence. Never throws on
/// assumption failure; failures are recorded.
ModelCertificate certify(const ConstitutiveModel& model, const CertifyOptions& opts = {});

/// max over the grid of |Upsilon(x,1) - 3 Gamma(x,1)| (hyperelastic identity).
double verify_hyper_identity(const ScaledFields& fields, std::span<const double> x_grid);

/// max residual of ((b+c) Ups0 - y Ups0')(1-y) + y Ups0 = y^c ((a+3) - a y) Gamma(0,y)
/// with Ups0' by central finite differences.
double verify_identity_56(const ScaledFields& fields, std::span<const double> y_grid);

/// max residual of (3/2) d/d_eta p_iso(d,d) = chi'(d) - chi(d)/d, finite
/// differences on both sides. Holds for every hyperelastic model.
double verify_iso_identity(const ConstitutiveModel& model, std::span<const double> delta_grid);

}  // namespace elastoball
