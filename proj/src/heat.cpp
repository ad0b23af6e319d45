#include "epca/heat.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace epca {

double heat_eigenfunction(int n, double x) {
    return std::sqrt(2.0 / M_PI) * std::sin(n * x);
}

EvolutionProcess build_heat_process(int modes) {
    if (modes < 1) throw std::invalid_argument("need at least one mode");
    std::vector<double> rates(modes);
    for (int n = 1; n <= modes; ++n) rates[n - 1] = -static_cast<double>(n) * n;
    const Potential q{-3.0, 1.0, kHeatPeriod};  // q(t) = -3 + sin(pi t)
    return EvolutionProcess("heat", std::move(rates), q, 1.0, kHeatDecayRate, kHeatPeriod);
}

std::vector<double> project_initial(std::span<const double> u0_samples, int modes) {
    const int nx = static_cast<int>(u0_samples.size());
    if (nx < 3) throw std::invalid_argument("need at least 3 spatial samples");
    if (std::abs(u0_samples.front()) > 1e-9 || std::abs(u0_samples.back()) > 1e-9)
        throw std::invalid_argument("Dirichlet data required");
    const double hx = M_PI / (nx - 1);
    std::vector<double> coeffs(modes, 0.0);
    for (int n = 1; n <= modes; ++n) {
        double acc = 0.0;
        for (int i = 1; i + 1 < nx; ++i)
            acc += u0_samples[i] * heat_eigenfunction(n, i * hx);
        // endpoint terms vanish with the boundary condition
        coeffs[n - 1] = hx * acc;
    }
    return coeffs;
}

std::vector<double> project_initial(const std::function<double(double)>& u0, int grid_points,
                                    int modes) {
    std::vector<double> samples(grid_points);
    const double hx = M_PI / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) samples[i] = u0(i * hx);
    return project_initial(samples, modes);
}

double reconstruct(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (size_t n = 0; n < coeffs.size(); ++n)
        acc += coeffs[n] * heat_eigenfunction(static_cast<int>(n) + 1, x);
    return acc;
}

std::vector<double> HeatInstance::initial_state() const {
    if (!c0.empty()) {
        if (static_cast<int>(c0.size()) != modes)
            throw std::invalid_argument("initial coefficients must have one entry per mode");
        return c0;
    }
    std::vector<double> state(modes, 0.0);
    state[0] = 1.0;  // phi_1
    return state;
}

Nonlinearity HeatInstance::make_nonlinearity() const {
    if (forcing == HeatForcing::modal_rational) {
        std::vector<double> amp = drive_amplitude;
        if (amp.empty()) {
            amp.assign(modes, 0.0);
            amp[0] = 1.0;
        }
        if (static_cast<int>(amp.size()) != modes)
            throw std::invalid_argument("drive amplitudes must have one entry per mode");
        std::vector<Drive> drives(modes);
        for (int n = 0; n < modes; ++n) {
            const double a = amp[n];
            if (a != 0.0)
                drives[n] = [a](double t) { return a * (std::sin(M_PI * t) + 1.0 / (1.0 + t)); };
        }
        return Nonlinearity::rational(beta, std::move(drives), kHeatPeriod);
    }

    // pointwise sine family: synthesize on the x grid, apply beta*sin,
    // project back; the L2 projection is non-expansive so L = beta
    const int nx = spatial_points;
    const int N = modes;
    const double hx = M_PI / (nx - 1);
    std::vector<double> table(static_cast<size_t>(N) * nx);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i < nx; ++i)
            table[static_cast<size_t>(n - 1) * nx + i] = heat_eigenfunction(n, i * hx);
    const double b = beta;
    auto fn = [table = std::move(table), nx, N, hx, b](double, std::span<const double> u,
                                                       std::span<double> out) {
        std::vector<double> w(nx);
        for (int i = 1; i + 1 < nx; ++i) {
            double s = 0.0;
            for (int n = 0; n < N; ++n) s += u[n] * table[static_cast<size_t>(n) * nx + i];
            w[i] = b * std::sin(s);
        }
        for (int n = 0; n < N; ++n) {
            double acc = 0.0;
            for (int i = 1; i + 1 < nx; ++i)
                acc += w[i] * table[static_cast<size_t>(n) * nx + i];
            out[n] = hx * acc;
        }
    };
    return Nonlinearity("pointwise-sine", N, beta, kHeatPeriod, std::move(fn));
}

HeatDemoResult run_heat_demo(const HeatInstance& inst, const SolverConfig& cfg,
                             double defect_tol) {
    const EvolutionProcess proc = build_heat_process(inst.modes);
    const Nonlinearity f = inst.make_nonlinearity();
    const std::vector<double> c0 = inst.initial_state();

    const double theta = f.lipschitz() * proc.stability_K() / proc.decay_rate();
    MildSolution marched = march(proc, f, c0, cfg);
    MildSolution fixed_point = picard_solve(proc, f, c0, cfg);

    double diff = 0.0;
    for (int i = 0; i < marched.path.node_count(); ++i)
        diff = std::max(diff, distance2(marched.path.value(i), fixed_point.path.value(i)));

    SapCertificate cert = certify_sap(fixed_point, kHeatPeriod, 1.0, defect_tol);
    const bool pass = cert.pass;
    HeatDemoResult result{std::move(marched), std::move(fixed_point), diff, std::move(cert),
                          theta, pass, ""};

    std::ostringstream os;
    os << "model: heat\n"
       << "modes: " << inst.modes << "\n"
       << "forcing: "
       << (inst.forcing == HeatForcing::modal_rational ? "modal-rational" : "pointwise-sine")
       << "\n"
       << "K: " << proc.stability_K() << "\n"
       << "a: " << proc.decay_rate() << "\n"
       << "omega: " << proc.period() << "\n"
       << "beta: " << inst.beta << "\n";
    os.precision(16);
    os << "theta: " << result.theta << "\n"
       << "h: " << cfg.step() << "\n"
       << "horizon: " << cfg.horizon << "\n"
       << "picard_tol: " << cfg.picard_tol << "\n"
       << "picard_iterations: " << result.picard_solution.iterations << "\n"
       << "iteration_bound: "
       << (result.theta < 1.0
               ? std::log(cfg.picard_tol / std::max(result.picard_solution.residual_history.front(),
                                                    cfg.picard_tol)) /
                     std::log(result.theta)
               : std::numeric_limits<double>::infinity())
       << "\n";
    os.precision(3);
    os << std::scientific << "march_picard_sup_diff: " << result.cross_check << "\n"
       << "sup_defect_final: " << result.certificate.sup_profile.final_value() << "\n"
       << "sp_defect_final: " << result.certificate.sp_profile.final_value() << "\n"
       << "defect_tol: " << defect_tol << "\n"
       << "verdict: " << (result.pass ? "PASS" : "FAIL") << "\n";
    result.report = os.str();
    return result;
}

}  // namespace epca
