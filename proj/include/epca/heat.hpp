#ifndef EPCA_HEAT_HPP
#define EPCA_HEAT_HPP

#include <functional>
#include <string>
#include <vector>

#include "epca/evolution.hpp"
#include "epca/nonlinearity.hpp"
#include "epca/solver.hpp"

namespace epca {

/*
 * Spectral realization of the heat problem on [0, pi] with Dirichlet walls
 * and potential q(t) = -3 + sin(pi t):
 *
 *   du/dt = u_xx + q(t) u + f(t, u([t]))
 *
 * in the sine eigenbasis phi_n(x) = sqrt(2/pi) sin(n x), eigenvalues -n^2.
 * Mode n of the linear part evolves by exp(-n^2 (t-s) + Q(t) - Q(s)) with
 * Q(t) = -3 t - cos(pi t)/pi, giving a 2-periodic process with K = 1, a = 3.
 * Galerkin truncation to N modes is exact for data inside the retained span.
 */

inline constexpr double kHeatDecayRate = 3.0;
inline constexpr double kHeatPeriod = 2.0;

double heat_eigenfunction(int n, double x);  // phi_n, n >= 1

EvolutionProcess build_heat_process(int modes);

// <u0, phi_n> for n = 1..modes from samples on the uniform grid over [0, pi]
// (endpoints included).  The trapezoid rule is exact on the sine products, so
// in-span data projects without truncation error.  Dirichlet boundary values
// are required.
std::vector<double> project_initial(std::span<const double> u0_samples, int modes);
std::vector<double> project_initial(const std::function<double(double)>& u0, int grid_points,
                                    int modes);

double reconstruct(std::span<const double> coeffs, double x);

enum class HeatForcing {
    modal_rational,  // f_n = beta u_n/(1+u_n^2) + amp_n (sin(pi t) + 1/(1+t))
    pointwise_sine,  // f = beta sin(u(x)) on a fine x grid, re-projected
};

struct HeatInstance {
    int modes = 16;
    double beta = 1.0;
    HeatForcing forcing = HeatForcing::modal_rational;
    std::vector<double> c0;                // modal coefficients; default phi_1
    std::vector<double> drive_amplitude;   // modal_rational only; default e_1

    // spatial grid for the pointwise family; >= 8 * modes keeps aliasing out
    static constexpr int spatial_points = 257;

    Nonlinearity make_nonlinearity() const;
    std::vector<double> initial_state() const;
};

struct HeatDemoResult {
    MildSolution march_solution;
    MildSolution picard_solution;
    double cross_check = 0.0;  // sup |march - picard|
    SapCertificate certificate;
    double theta = 0.0;
    bool pass = false;
    std::string report;
};

// Full pipeline: build the process, solve both ways, cross-check, certify
// with omega = 2, and render a text report.
HeatDemoResult run_heat_demo(const HeatInstance& inst, const SolverConfig& cfg,
                             double defect_tol = 1e-2);

}  // namespace epca

#endif
