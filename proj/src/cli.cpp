#include "epca/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "epca/csv.hpp"
#include "epca/function_space.hpp"
#include "epca/heat.hpp"
#include "epca/solver.hpp"

namespace epca::cli {

namespace fs = std::filesystem;

int RunConfig::steps_per_unit() const {
    if (h <= 0.0 || h > 0.5) throw UsageError("h must lie in (0, 0.5]");
    const double m_exact = 1.0 / h;
    const int m = static_cast<int>(std::round(m_exact));
    if (std::abs(m_exact - m) > 1e-9)
        throw UsageError("h must equal 1/m for an integer m >= 2");
    return m;
}

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw UsageError(std::string("malformed value in ") + what + ": " + cell);
        }
    }
    if (out.empty()) throw UsageError(std::string(what) + " must not be empty");
    return out;
}

SolverConfig solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.steps_per_unit = cfg.steps_per_unit();
    sc.horizon = cfg.horizon;
    sc.picard_tol = cfg.tol;
    sc.picard_max_iter = cfg.max_iter;
    return sc;
}

EvolutionProcess make_process(const RunConfig& cfg) {
    if (cfg.model == "scalar") return EvolutionProcess::scalar(cfg.a, cfg.omega);
    if (cfg.model == "heat") return build_heat_process(cfg.modes);
    if (cfg.model == "diagonal") {
        if (cfg.rates.empty()) throw UsageError("diagonal model requires --rates r1,r2,...");
        std::optional<Potential> q;
        if (cfg.potential == "sin")
            q = Potential{cfg.q_mean, cfg.q_amplitude, cfg.q_period};
        else if (cfg.potential != "none")
            throw UsageError("potential must be one of {none, sin}");
        return EvolutionProcess::diagonal(parse_list(cfg.rates, "rates"), cfg.K, cfg.a,
                                          cfg.omega, q);
    }
    throw UsageError("model must be one of {scalar, diagonal, heat}");
}

Nonlinearity make_nonlinearity(const RunConfig& cfg, int dim) {
    const std::string kind = cfg.forcing.empty() ? "rational" : cfg.forcing;
    std::vector<Drive> drives(dim);
    drives[0] = standard_drive();
    if (kind == "rational") return Nonlinearity::rational(cfg.L, std::move(drives), cfg.omega);
    if (kind == "linear") return Nonlinearity::linear(cfg.L, std::move(drives), cfg.omega);
    if (kind == "sine") return Nonlinearity::sine(cfg.L, dim, cfg.omega);
    if (kind == "zero") return Nonlinearity::zero(dim);
    if (kind == "ramp") return Nonlinearity::ramp(dim);
    throw UsageError("forcing must be one of {rational, linear, sine, zero, ramp}");
}

std::vector<double> make_initial_state(const RunConfig& cfg, int dim) {
    if (cfg.c0.empty()) {
        std::vector<double> state(dim, 0.0);
        state[0] = 1.0;
        return state;
    }
    auto state = parse_list(cfg.c0, "c0");
    if (static_cast<int>(state.size()) != dim)
        throw UsageError("c0 must have one entry per state component");
    return state;
}

void write_file(const fs::path& file, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    body(os);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
    return dir;
}

void warn_if_expansive(double theta) {
    if (theta >= 1.0)
        std::cerr << "warning: theta = L*K/a = " << theta
                  << " >= 1; the contraction guarantee does not apply\n";
}

int run_solve(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const EvolutionProcess proc = make_process(cfg);
    Nonlinearity f = [&] {
        if (cfg.model != "heat") return make_nonlinearity(cfg, proc.dimension());
        HeatInstance inst;
        inst.modes = cfg.modes;
        inst.beta = cfg.beta;
        inst.forcing = (cfg.forcing == "sine") ? HeatForcing::pointwise_sine
                                               : HeatForcing::modal_rational;
        return inst.make_nonlinearity();
    }();
    const auto c0 = make_initial_state(cfg, proc.dimension());
    const SolverConfig sc = solver_config(cfg);
    const double theta = f.lipschitz() * proc.stability_K() / proc.decay_rate();

    std::optional<MildSolution> marched, picard;
    if (cfg.method == "march" || cfg.method == "both") marched = march(proc, f, c0, sc);
    if (cfg.method == "picard" || cfg.method == "both") {
        warn_if_expansive(theta);
        picard = picard_solve(proc, f, c0, sc);
    }
    if (!marched && !picard) throw UsageError("method must be one of {march, picard, both}");

    const MildSolution& primary = picard ? *picard : *marched;
    write_file(dir / "solution.csv",
               [&](std::ostream& os) { write_path_csv(os, (marched ? *marched : primary).path); });
    if (picard) {
        if (marched)
            write_file(dir / "solution_picard.csv",
                       [&](std::ostream& os) { write_path_csv(os, picard->path); });
        write_file(dir / "residuals.csv", [&](std::ostream& os) {
            write_residuals_csv(os, picard->residual_history);
        });
    }

    double cross = 0.0;
    if (marched && picard)
        for (int i = 0; i < marched->path.node_count(); ++i)
            cross = std::max(cross, distance2(marched->path.value(i), picard->path.value(i)));

    const bool certifiable = cfg.horizon >= 4.0 * cfg.omega;
    std::optional<SapCertificate> cert;
    if (certifiable) {
        cert = certify_sap(primary, cfg.omega, cfg.p, cfg.defect_tol);
        write_file(dir / "profile_sup.csv",
                   [&](std::ostream& os) { write_profile_csv(os, cert->sup_profile); });
        write_file(dir / "profile_sp.csv",
                   [&](std::ostream& os) { write_profile_csv(os, cert->sp_profile); });
    }

    write_file(dir / "report.txt", [&](std::ostream& os) {
        os << "subcommand: solve\nmodel: " << cfg.model << "\nmethod: " << cfg.method << "\n";
        os.precision(16);
        os << "theta: " << theta << "\nh: " << sc.step() << "\nhorizon: " << cfg.horizon
           << "\nomega: " << cfg.omega << "\np: " << cfg.p << "\nseed: " << cfg.seed << "\n";
        if (picard)
            os << "picard_iterations: " << picard->iterations
               << "\npicard_final_residual: " << format_double(picard->residual_history.back())
               << "\n";
        if (marched && picard) os << "march_picard_sup_diff: " << format_double(cross) << "\n";
        if (cert)
            os << "sup_defect_final: " << format_double(cert->sup_profile.final_value())
               << "\nsp_defect_final: " << format_double(cert->sp_profile.final_value())
               << "\ndefect_tol: " << cfg.defect_tol << "\nverdict: "
               << (cert->pass ? "PASS" : "FAIL") << "\n";
        else
            os << "verdict: SKIPPED (horizon < 4*omega)\n";
    });
    return (!cert || cert->pass) ? kExitPass : kExitFail;
}

int run_diagnose(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("diagnose requires --input FILE");
    const fs::path dir = prepare_out_dir(cfg);
    std::ifstream is(cfg.input);
    if (!is) throw std::runtime_error("cannot read " + cfg.input);
    const SampledPath path = read_path_csv(is);
    const DefectProfile sup = sup_defect_profile(path, cfg.omega);
    const DefectProfile sp = stepanov_defect_profile(path, cfg.omega, cfg.p);
    write_file(dir / "profile_sup.csv", [&](std::ostream& os) { write_profile_csv(os, sup); });
    write_file(dir / "profile_sp.csv", [&](std::ostream& os) { write_profile_csv(os, sp); });
    const bool pass = sup.decays(cfg.defect_tol) && sp.decays(cfg.defect_tol);
    write_file(dir / "report.txt", [&](std::ostream& os) {
        os << "subcommand: diagnose\ninput: " << cfg.input << "\nomega: " << cfg.omega
           << "\np: " << cfg.p << "\nsup_defect_final: " << format_double(sup.final_value())
           << "\nsp_defect_final: " << format_double(sp.final_value())
           << "\ndefect_tol: " << cfg.defect_tol << "\nverdict: " << (pass ? "PASS" : "FAIL")
           << "\n";
    });
    return pass ? kExitPass : kExitFail;
}

int run_verify(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const EvolutionProcess proc = make_process(cfg);
    const ProcessReport rep = verify_process(proc, cfg.samples, cfg.seed);
    const bool pass = rep.pass(1e-12);
    write_file(dir / "verify_report.txt", [&](std::ostream& os) {
        os << rep.to_text() << "tolerance: 1e-12\nverdict: " << (pass ? "PASS" : "FAIL") << "\n";
    });
    std::cout << rep.to_text() << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitPass : kExitFail;
}

int run_demo_heat(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    HeatInstance inst;
    inst.modes = cfg.modes;
    inst.beta = cfg.beta;
    inst.forcing = (cfg.forcing == "sine") ? HeatForcing::pointwise_sine
                                           : HeatForcing::modal_rational;
    if (!cfg.c0.empty()) inst.c0 = parse_list(cfg.c0, "c0");
    SolverConfig sc = solver_config(cfg);
    if (!cfg.horizon_set) sc.horizon = 100;  // demo default: a long certification window
    warn_if_expansive(cfg.beta / kHeatDecayRate);

    const HeatDemoResult demo = run_heat_demo(inst, sc, cfg.defect_tol);
    write_file(dir / "solution.csv",
               [&](std::ostream& os) { write_path_csv(os, demo.picard_solution.path); });
    write_file(dir / "residuals.csv", [&](std::ostream& os) {
        write_residuals_csv(os, demo.picard_solution.residual_history);
    });
    write_file(dir / "profile_sup.csv", [&](std::ostream& os) {
        write_profile_csv(os, demo.certificate.sup_profile);
    });
    write_file(dir / "profile_sp.csv", [&](std::ostream& os) {
        write_profile_csv(os, demo.certificate.sp_profile);
    });
    write_file(dir / "report.txt", [&](std::ostream& os) {
        os << demo.report << "seed: " << cfg.seed << "\n";
    });
    for (double t : cfg.snapshots) {
        const auto coeffs = demo.picard_solution.path.value_at(t);
        std::ostringstream name;
        name << "snapshot_" << t << ".csv";
        write_file(dir / name.str(), [&](std::ostream& os) {
            os << "x,u\n";
            const int nx = HeatInstance::spatial_points;
            for (int i = 0; i < nx; ++i) {
                const double x = M_PI * i / (nx - 1);
                os << format_double(x) << "," << format_double(reconstruct(coeffs, x)) << "\n";
            }
        });
    }
    return demo.pass ? kExitPass : kExitFail;
}

void build_app(CLI::App& app, RunConfig& cfg) {
    app.description("mild solutions and asymptotic-period certification for "
                    "x'(t) = A(t)x(t) + f(t, x([t]))");
    app.set_help_flag("--help", "print usage");  // frees -h / --h for the grid step
    app.set_config("--config", "", "key = value file, same keys as the long flags");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(0, 1);

    app.add_option("--model", cfg.model, "scalar | diagonal | heat")
        ->check(CLI::IsMember({"scalar", "diagonal", "heat"}));
    app.add_option("--method", cfg.method, "march | picard | both")
        ->check(CLI::IsMember({"march", "picard", "both"}));
    app.add_option("--a", cfg.a, "decay rate a > 0")->check(CLI::PositiveNumber);
    app.add_option("--K", cfg.K, "stability constant K > 0")->check(CLI::PositiveNumber);
    app.add_option("--L", cfg.L, "Lipschitz constant of the state term")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--beta", cfg.beta, "heat forcing strength (theta = beta/3)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--omega", cfg.omega, "asymptotic period")->check(CLI::PositiveNumber);
    app.add_option("--p", cfg.p, "Stepanov exponent, >= 1")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                try {
                    if (std::stod(s) < 1.0) return "p must be >= 1";
                } catch (const std::exception&) {
                    return "p must be a number >= 1";
                }
                return {};
            },
            "P_RANGE"));
    app.add_option("--h", cfg.h, "grid step, must equal 1/m");
    app.add_option("--horizon", cfg.horizon, "integer time horizon")
        ->check(CLI::PositiveNumber)
        ->each([&cfg](const std::string&) { cfg.horizon_set = true; });
    app.add_option("--modes", cfg.modes, "retained sine modes (heat)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "Picard stopping tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.max_iter, "Picard iteration cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--defect-tol", cfg.defect_tol, "defect decay tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--seed", cfg.seed, "seed for sampling diagnostics");
    app.add_option("--input", cfg.input, "path CSV to diagnose");
    app.add_option("--rates", cfg.rates, "diagonal mode rates r1,r2,...");
    app.add_option("--c0", cfg.c0, "initial state v0,v1,...");
    app.add_option("--forcing", cfg.forcing,
                   "rational | linear | sine | zero | ramp (heat: modal | sine)");
    app.add_option("--potential", cfg.potential, "none | sin")
        ->check(CLI::IsMember({"none", "sin"}));
    app.add_option("--q-mean", cfg.q_mean, "potential mean value");
    app.add_option("--q-amplitude", cfg.q_amplitude, "potential oscillation amplitude");
    app.add_option("--q-period", cfg.q_period, "potential period")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "verification sample count")
        ->check(CLI::PositiveNumber);
    app.add_option("--snapshot", cfg.snapshots, "spatial snapshot times (demo-heat)");

    for (const char* name : {"solve", "diagnose", "verify-process", "demo-heat"})
        app.add_subcommand(name)->fallthrough();
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"epca"};
    build_app(app, cfg);
    app.parse(argc, argv);
    auto subs = app.get_subcommands();
    if (subs.empty()) throw UsageError("a subcommand is required: solve | diagnose | verify-process | demo-heat");
    cfg.subcommand = subs.front()->get_name();
    cfg.steps_per_unit();  // validate h early
    return cfg;
}

int run(const RunConfig& cfg) {
    if (cfg.subcommand == "solve") return run_solve(cfg);
    if (cfg.subcommand == "diagnose") return run_diagnose(cfg);
    if (cfg.subcommand == "verify-process") return run_verify(cfg);
    if (cfg.subcommand == "demo-heat") return run_demo_heat(cfg);
    throw UsageError("unknown subcommand: " + cfg.subcommand);
}

int cli_main(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"epca"};
    build_app(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (argc <= 1) std::cerr << app.help();
        return kExitUsage;
    }
    try {
        auto subs = app.get_subcommands();
        if (subs.empty()) {
            std::cerr << "error: a subcommand is required\n" << app.help();
            return kExitUsage;
        }
        cfg.subcommand = subs.front()->get_name();
        cfg.steps_per_unit();
        return run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace epca::cli
