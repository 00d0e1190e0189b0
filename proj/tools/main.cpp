// Command-line front end: validate / solve / sweep / phase / oracle.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <cctype>
#include <sstream>

#include "CLI11.hpp"
#include "elastoball/certify.hpp"
#include "elastoball/model_io.hpp"
#include "elastoball/oracles.hpp"
#include "elastoball/solver.hpp"
#include "elastoball/grid_scan.hpp"
#include "elastoball/table_io.hpp"

namespace eb = elastoball;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::string model;    // builtin name or definition file path
    std::string builtin;  // explicit builtin name
    double lambda = 1.0;
    double mu = 1.0;
    double kref = 1.0;
    bool lambda_set = false, mu_set = false, kref_set = false;

    void attach(CLI::App* cmd, bool kref_too = true) {
        cmd->add_option("--model", model, "builtin name or model definition file");
        cmd->add_option("--builtin", builtin, "builtin model name");
        cmd->add_option("--lambda", lambda, "first Lame coefficient")
            ->each([this](const std::string&) { lambda_set = true; });
        cmd->add_option("--mu", mu, "shear modulus")->each([this](const std::string&) {
            mu_set = true;
        });
        if (kref_too)
            cmd->add_option("--kref", kref, "reference density")
                ->each([this](const std::string&) { kref_set = true; });
    }

    // resolved model + reference density; lenient spec loading so that the
    // certificate can report condition failures instead of refusing the file
    std::pair<eb::ConstitutiveModel, double> resolve() const {
        const std::string name = !builtin.empty() ? builtin : model;
        if (name.empty()) throw UsageError("--model or --builtin is required");
        bool as_builtin = !builtin.empty();
        if (!as_builtin) {
            try {
                (void)eb::builtin_from_string(name);
                as_builtin = true;
            } catch (const std::invalid_argument&) {
                as_builtin = false;  // not a builtin name: treat as a path
            }
        }
        if (as_builtin) {
            const eb::LameParameters lame{lambda, mu, kref};
            return {eb::make_builtin(eb::builtin_from_string(name), lame), kref};
        }
        auto def = eb::load_model_definition(name);
        if (lambda_set) def.lame.lambda = lambda;
        if (mu_set) def.lame.mu = mu;
        if (kref_set) def.lame.kappa_ref = kref;
        return {def.instantiate(false), def.lame.kappa_ref};
    }

    std::string describe() const {
        std::ostringstream ss;
        ss << "model=" << (builtin.empty() ? model : builtin) << " lambda=" << lambda
           << " mu=" << mu << " kref=" << kref;
        return ss.str();
    }
};

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw std::runtime_error("cannot open output file '" + path + "'");
    return f;
}

void print_certificate(std::ostream& os, const eb::ModelCertificate& cert) {
    os << "model: " << cert.model_name << "\n";
    if (!cert.classified) {
        os << "classification: FAILED (" << cert.classification_message << ")\n";
        return;
    }
    const auto& e = cert.exponents;
    os << "exponents: a = " << e.a << ", b = " << e.b << ", c = " << e.c
       << "  (gamma* = " << e.gamma_star.str() << ", beta* = " << e.beta_star.str()
       << ", sigma = " << e.sigma << ")\n";
    os << "thresholds: X_flat = " << eb::io::sci(cert.x_flat)
       << "  X_sharp = " << eb::io::sci(cert.x_sharp)
       << "  delta_max = " << eb::io::sci(cert.delta_max) << "\n";
    os << "grids: evidence " << cert.grid_nx << "x" << cert.grid_ny << ", region scan "
       << cert.sharp_nx << "x" << cert.sharp_ny << ", x scan cap " << cert.x_scan_max_used
       << "\n";
    for (const auto& a : cert.assumptions) {
        os << "  [" << (a.passed ? "pass" : (a.advisory ? "FAIL (advisory)" : "FAIL")) << "] "
           << a.id << ": " << a.title;
        if (!a.passed)
            os << "  worst = " << a.worst << " at (" << a.witness_x << ", " << a.witness_y
               << ")";
        if (!a.detail.empty()) os << "  [" << a.detail << "]";
        os << "\n";
    }
    os << (cert.all_passed() ? "certificate: admissible\n"
                             : (cert.passed_non_advisory()
                                    ? "certificate: admissible for the radial route "
                                      "(advisory planar failures)\n"
                                    : "certificate: NOT admissible\n"));
}

void write_certificate_record(std::ostream& os, const eb::ModelCertificate& cert) {
    eb::io::KeyValueWriter kv(os);
    kv.put("model", cert.model_name);
    kv.put("classified", cert.classified);
    if (cert.classified) {
        kv.put("a", cert.exponents.a);
        kv.put("b", cert.exponents.b);
        kv.put("c", cert.exponents.c);
        kv.put("gamma_star", cert.exponents.gamma_star.str());
        kv.put("beta_star", cert.exponents.beta_star.str());
        kv.put("sigma", cert.exponents.sigma);
        kv.put("x_flat", cert.x_flat);
        kv.put("x_sharp", cert.x_sharp);
        kv.put("delta_max", cert.delta_max);
    }
    for (const auto& a : cert.assumptions) {
        std::string id = a.id;
        for (auto& ch : id) ch = static_cast<char>(std::tolower(ch));
        kv.put(id + "_passed", a.passed);
        if (!a.passed) {
            kv.put(id + "_advisory", a.advisory);
            kv.put(id + "_worst", a.worst);
            kv.put(id + "_witness_x", a.witness_x);
            kv.put(id + "_witness_y", a.witness_y);
        }
    }
    kv.put("all_passed", cert.all_passed());
}

void write_profile(std::ostream& os, const eb::BallSolution& sol, const std::string& config) {
    eb::io::Table table(os);
    table.config(config);
    const std::vector<std::string> cols{"r", "delta", "eta", "x",    "y",
                                        "m", "p_rad", "p_tan", "phi"};
    table.header(cols);
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double row[] = {sol.r[i], sol.delta[i], sol.eta[i],   sol.x[i],   sol.y[i],
                              sol.m[i], sol.p_rad[i], sol.p_tan[i], sol.phi[i]};
        table.row(row);
    }
}

void write_summary(std::ostream& os, const eb::ConstitutiveModel& model,
                   const eb::BallSolution& sol) {
    const auto bounds = eb::verify_bounds(model, sol);
    eb::io::KeyValueWriter kv(os);
    kv.put("model", sol.model_name);
    kv.put("method", sol.method);
    kv.put("delta_c", sol.delta_c());
    kv.put("kappa_ref", sol.kappa_ref);
    kv.put("R", sol.R);
    kv.put("M", sol.M);
    kv.put("central_pressure", sol.central_pressure);
    kv.put("surface_pressure", sol.p_rad.back());
    kv.put("bounds_hold", bounds.all_hold);
    kv.put("margin_hyperbolicity", bounds.hyperbolicity);
    kv.put("margin_density", bounds.density);
    kv.put("margin_mass_upper", bounds.mass_upper);
    kv.put("margin_mass_lower", bounds.mass_lower);
    kv.put("grid_points", static_cast<double>(sol.size()));
    kv.put("rel_tol", sol.rel_tol);
    kv.put("abs_tol", sol.abs_tol);
    kv.put("seed_eps", sol.seed_eps);
}

int fail_domain(const std::string& what) {
    std::cerr << "error: " << what << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"static self-gravitating elastic ball solver and certifier"};
    app.require_subcommand(1);

    eb::SolveOptions defaults;
    if (const char* env = std::getenv("ELASTOBALL_TOL_REL")) defaults.rel_tol = std::atof(env);
    if (const char* env = std::getenv("ELASTOBALL_TOL_ABS")) defaults.abs_tol = std::atof(env);

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "certify the model assumptions");
    ModelFlags vflags;
    vflags.attach(validate);
    std::string v_out;
    bool v_strict = false;
    validate->add_option("--out", v_out, "machine-readable certificate record");
    validate->add_flag("--strict", v_strict, "exit 1 unless every assumption passes");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "construct one equilibrium ball");
    ModelFlags sflags;
    sflags.attach(solve);
    double s_delta_c = 0.0;
    double s_tol = defaults.rel_tol;
    std::string s_out;
    bool s_experimental = false;
    solve->add_option("--delta-c", s_delta_c, "central compression rho_c / K")->required();
    solve->add_option("--tol", s_tol, "relative integration tolerance");
    solve->add_option("--out", s_out, "profile table path (summary in <out>.summary)");
    solve->add_flag("--experimental", s_experimental,
                    "permit runs outside the certified window");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "mass-radius table over central densities");
    ModelFlags wflags;
    wflags.attach(sweep_cmd);
    std::string w_range;
    double w_tol = defaults.rel_tol;
    std::string w_out;
    bool w_experimental = false;
    sweep_cmd->add_option("--delta-c-range", w_range, "a:b:n inclusive range")->required();
    sweep_cmd->add_option("--tol", w_tol, "relative integration tolerance");
    sweep_cmd->add_option("--out", w_out, "table path");
    sweep_cmd->add_flag("--experimental", w_experimental,
                        "permit runs outside the certified window");

    // ---- phase ----
    auto* phase = app.add_subcommand("phase", "planar flow portrait data");
    ModelFlags pflags;
    pflags.attach(phase);
    std::size_t p_grid = 5;
    double p_xc = 0.0;
    std::string p_out;
    phase->add_option("--grid", p_grid, "seeds per axis for the planar trajectories");
    phase->add_option("--xc", p_xc, "also project the regular orbit seeded at x_c");
    phase->add_option("--out", p_out, "trajectory table (fixed points in <out>.fixed_points)");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "closed-form self-similar solutions");
    std::string o_model;
    double o_lambda = 1.0, o_mu = 1.0, o_kref = 1.0;
    std::size_t o_grid = 1000;
    std::string o_out;
    oracle->add_option("--model", o_model, "seth or john")->required();
    oracle->add_option("--lambda", o_lambda, "first Lame coefficient");
    oracle->add_option("--mu", o_mu, "shear modulus");
    oracle->add_option("--kref", o_kref, "reference density");
    oracle->add_option("--grid", o_grid, "points of the log grid");
    oracle->add_option("--out", o_out, "table path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) {
            const auto [model, kref] = vflags.resolve();
            (void)kref;
            const auto cert = eb::certify(model);
            print_certificate(std::cout, cert);
            if (!v_out.empty()) write_certificate_record(*open_out(v_out), cert);
            return (v_strict && !cert.all_passed()) ? 1 : 0;
        }

        if (*solve) {
            const auto [model, kref] = sflags.resolve();
            const auto cert = eb::certify(model);
            if (!cert.passed_non_advisory() && !s_experimental)
                return fail_domain("model '" + model.name() +
                                   "' fails the admissibility certificate; rerun with "
                                   "--experimental to study it anyway");
            eb::SolveOptions opts = defaults;
            opts.rel_tol = s_tol;
            opts.experimental = s_experimental;
            const auto sol = eb::solve_ball(model, s_delta_c * kref, kref, opts);
            const std::string config = "elastoball solve " + sflags.describe() +
                                       " delta_c=" + eb::io::sci(s_delta_c) +
                                       " tol=" + eb::io::sci(s_tol) + " grid=" +
                                       std::to_string(opts.grid_points);
            if (s_out.empty()) {
                write_profile(std::cout, sol, config);
                write_summary(std::cerr, model, sol);
            } else {
                write_profile(*open_out(s_out), sol, config);
                write_summary(*open_out(s_out + ".summary"), model, sol);
            }
            return 0;
        }

        if (*sweep_cmd) {
            double a = 0.0, b = 0.0;
            int n = 0;
            {
                std::istringstream ss(w_range);
                char c1 = 0, c2 = 0;
                if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
                    std::cerr << "error: --delta-c-range expects a:b:n\n";
                    return 2;
                }
            }
            const auto [model, kref] = wflags.resolve();
            std::vector<double> deltas(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                deltas[static_cast<std::size_t>(i)] =
                    n == 1 ? a : a + (b - a) * i / static_cast<double>(n - 1);
            eb::SolveOptions opts = defaults;
            opts.rel_tol = w_tol;
            opts.experimental = w_experimental;
            const auto rows = eb::sweep(model, deltas, kref, opts);
            std::unique_ptr<std::ofstream> file;
            std::ostream* os = &std::cout;
            if (!w_out.empty()) {
                file = open_out(w_out);
                os = file.get();
            }
            eb::io::Table table(*os);
            table.config("elastoball sweep " + wflags.describe() + " range=" + w_range +
                         " tol=" + eb::io::sci(w_tol));
            const std::vector<std::string> cols{"delta_c", "R",           "M",
                                                "p_rad_central", "worst_margin", "status"};
            table.header(cols);
            for (const auto& row : rows) {
                const double vals[] = {row.delta_c, row.R, row.M, row.central_pressure,
                                       row.worst_margin, row.ok ? 0.0 : 1.0};
                table.row(vals);
                if (!row.ok)
                    std::cerr << "delta_c = " << row.delta_c << ": " << row.error << "\n";
            }
            return 0;
        }

        if (*phase) {
            const auto [model, kref] = pflags.resolve();
            const eb::DynSystem sys(model);
            std::unique_ptr<std::ofstream> file;
            std::ostream* os = &std::cout;
            if (!p_out.empty()) {
                file = open_out(p_out);
                os = file.get();
            }
            {
                std::unique_ptr<std::ofstream> fp_file;
                std::ostream* fp_os = &std::cout;
                if (!p_out.empty()) {
                    fp_file = open_out(p_out + ".fixed_points");
                    fp_os = fp_file.get();
                }
                for (const auto& fp : sys.fixed_points_2d()) {
                    *fp_os << to_string(fp.label) << " y=" << eb::io::sci(fp.location[1])
                           << " v=" << eb::io::sci(fp.location[2])
                           << " class=" << to_string(fp.classification) << " eigs=";
                    for (const auto& z : fp.eigenvalues)
                        *fp_os << " (" << eb::io::sci(z.real()) << "," << eb::io::sci(z.imag())
                               << ")";
                    *fp_os << "\n";
                }
            }
            eb::io::Table table(*os);
            table.config("elastoball phase " + pflags.describe() + " grid=" +
                         std::to_string(p_grid) + " xc=" + eb::io::sci(p_xc));
            const std::vector<std::string> cols{"xi", "y", "v"};
            table.header(cols);
            const double vs = sys.v_star();
            auto emit_planar = [&](double y0, double v0) {
                auto rhs = [&](double, const eb::State<2>& s, eb::State<2>& ds) {
                    const auto f = sys.field2(s[0], s[1]);
                    ds = {f[0], f[1]};
                };
                eb::OdeControl<2> ctl;
                ctl.t_end = 30.0;
                const auto traj = eb::integrate_ode(rhs, 0.0, eb::State<2>{y0, v0}, ctl);
                table.config("trajectory y0=" + eb::io::sci(y0) + " v0=" + eb::io::sci(v0));
                const double span = traj.t_end() - traj.t_begin();
                for (int i = 0; i <= 200; ++i) {
                    const double xi = traj.t_begin() + span * i / 200.0;
                    const auto s = traj.eval(xi);
                    const double vals[] = {xi, s[0], s[1]};
                    table.row(vals);
                }
                table.blank();
            };
            for (std::size_t i = 1; i <= p_grid; ++i)
                for (std::size_t j = 1; j <= p_grid; ++j)
                    emit_planar(0.9 * i / static_cast<double>(p_grid),
                                2.0 * vs * j / static_cast<double>(p_grid));
            if (p_xc > 0.0) {
                eb::OrbitStop stop;
                stop.xi_span = 60.0;
                stop.converge_tol = 1e-6 * std::max(1.0, vs);
                const auto traj =
                    sys.integrate_orbit(sys.seed_unstable(p_xc, 1e-8 * p_xc), stop);
                table.config("regular orbit projection xc=" + eb::io::sci(p_xc));
                for (const auto& s : eb::sample_orbit(traj, 400)) {
                    const double vals[] = {s.xi, s.y, s.v};
                    table.row(vals);
                }
            }
            return 0;
        }

        if (*oracle) {
            if (o_model != "seth" && o_model != "john") {
                std::cerr << "error: --model must be seth or john\n";
                return 2;
            }
            const eb::LameParameters lame{o_lambda, o_mu, o_kref};
            const auto ex = o_model == "seth" ? eb::seth_exact(lame) : eb::john_exact(lame);
            const auto model = eb::make_builtin(eb::builtin_from_string(o_model), lame);
            const double r_hi = o_model == "seth" ? 10.0 : 100.0;
            const auto rs = eb::grid::logspace(0.1, r_hi, o_grid);
            std::unique_ptr<std::ofstream> file;
            std::ostream* os = &std::cout;
            if (!o_out.empty()) {
                file = open_out(o_out);
                os = file.get();
            }
            eb::io::Table table(*os);
            std::ostringstream cfg;
            cfg << "elastoball oracle model=" << o_model << " lambda=" << o_lambda
                << " mu=" << o_mu << " kref=" << o_kref << " d=" << eb::io::sci(ex.d)
                << " radii=";
            for (double r : ex.radii) cfg << eb::io::sci(r) << ";";
            table.config(cfg.str());
            const std::vector<std::string> cols{
                "r", "delta", "eta", "p_rad", "p_tan", "residual_delta_eq", "residual_eta_eq"};
            table.header(cols);
            for (double r : rs) {
                const auto res = eb::residual_of_exact_at(model, ex, r);
                const double vals[] = {r,           ex.delta(r),  ex.eta(r), ex.p_rad(r),
                                       ex.p_tan(r), res.delta_eq, res.eta_eq};
                table.row(vals);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eb::SolveError& e) {
        return fail_domain(e.what());
    } catch (const eb::ClassificationError& e) {
        return fail_domain(e.what());
    } catch (const std::invalid_argument& e) {
        return fail_domain(e.what());
    } catch (const std::domain_error& e) {
        return fail_domain(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
