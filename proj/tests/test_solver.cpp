#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epca/solver.hpp"

using namespace epca;

namespace {

SolverConfig config(int m, int T) {
    SolverConfig cfg;
    cfg.steps_per_unit = m;
    cfg.horizon = T;
    return cfg;
}

double sup_error(const SampledPath& path, double (*exact)(double)) {
    double worst = 0.0;
    for (int i = 0; i < path.node_count(); ++i)
        worst = std::max(worst, std::abs(path.scalar_value(i) - exact(path.time_at(i))));
    return worst;
}

double t_exp_decay(double t) { return t * std::exp(-t); }

}  // namespace

TEST_CASE("homogeneous marching reproduces the evolution factor") {
    auto proc = EvolutionProcess::scalar(3.0);
    auto f = Nonlinearity::zero(1);
    std::vector<double> c0{2.0};
    auto sol = march(proc, f, c0, config(32, 8));
    for (int i = 0; i < sol.path.node_count(); ++i) {
        const double t = sol.path.time_at(i);
        CHECK(sol.path.scalar_value(i) ==
              doctest::Approx(2.0 * std::exp(-3.0 * t)).epsilon(1e-12));
    }
}

TEST_CASE("x' = -x + x([t]) from 1 stays at 1") {
    auto proc = EvolutionProcess::scalar(1.0);
    auto f = Nonlinearity::linear(1.0, std::vector<Drive>{nullptr}, 1.0);
    std::vector<double> c0{1.0};
    auto sol = march(proc, f, c0, config(64, 20));
    for (int i = 0; i < sol.path.node_count(); ++i)
        CHECK(sol.path.scalar_value(i) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("x' = -x + exp(-t) matches t exp(-t) to 1e-8 and converges at order 4") {
    auto proc = EvolutionProcess::scalar(1.0);
    auto f = Nonlinearity::forcing({[](double t) { return std::exp(-t); }}, 1.0);
    std::vector<double> c0{0.0};
    const double e64 = sup_error(march(proc, f, c0, config(64, 16)).path, t_exp_decay);
    const double e128 = sup_error(march(proc, f, c0, config(128, 16)).path, t_exp_decay);
    CHECK(e64 <= 1e-8);
    CHECK(e64 / e128 >= 8.0);
}

TEST_CASE("marching reports divergent trajectories") {
    auto unstable = EvolutionProcess::diagonal({50.0}, 1.0, 1.0, 1.0);
    auto f = Nonlinearity::zero(1);
    std::vector<double> c0{1.0};
    CHECK_THROWS_WITH_AS(march(unstable, f, c0, config(8, 16)), "divergent trajectory",
                         std::runtime_error);
}

TEST_CASE("lambda transform of zero forcing is zero") {
    auto proc = EvolutionProcess::scalar(2.0);
    std::vector<double> zeros(1, 0.0);
    auto forcing = SampledPath::constant(zeros, 16, 8);
    auto out = lambda_transform(proc, forcing);
    for (int i = 0; i < out.node_count(); ++i) CHECK(out.scalar_value(i) == 0.0);
}

TEST_CASE("lambda transform of the unit forcing gives (1 - exp(-a t))/a") {
    const double a = 3.0;
    auto proc = EvolutionProcess::scalar(a);
    std::vector<double> ones(1, 1.0);
    auto forcing = SampledPath::constant(ones, 32, 10);
    auto out = lambda_transform(proc, forcing);
    // panel error of the 2-point rule on the exp kernel is ~h^5 a^4 / 4320
    // per substep, ~6e-9 accumulated at this grid
    for (int i = 0; i < out.node_count(); ++i) {
        const double t = out.time_at(i);
        CHECK(out.scalar_value(i) ==
              doctest::Approx((1.0 - std::exp(-a * t)) / a).epsilon(1e-7));
    }
}

TEST_CASE("lambda transform respects the Stepanov-norm bound") {
    for (double a : {1.0, 3.0}) {
        auto proc = EvolutionProcess::scalar(a, 2.0);
        auto forcing = SampledPath::sample_scalar(
            [](double t) { return 1.5 + std::sin(M_PI * t) + 0.5 / (1.0 + t); }, 32, 24);
        auto out = lambda_transform(proc, forcing);
        double sup = 0.0;
        for (int i = 0; i < out.node_count(); ++i)
            sup = std::max(sup, std::abs(out.scalar_value(i)));
        const double gain = (2.0 - std::exp(-a)) / (1.0 - std::exp(-a));
        CHECK(sup <= gain * stepanov_norm(forcing, 1.0));
        CHECK(sup <= gain * stepanov_norm(forcing, 2.0));
    }
}

TEST_CASE("picard with zero forcing converges in one productive iteration") {
    auto proc = EvolutionProcess::scalar(2.0);
    auto f = Nonlinearity::zero(1);
    std::vector<double> c0{1.0};
    auto sol = picard_solve(proc, f, c0, config(16, 8));
    CHECK(sol.iterations == 1);
    for (int i = 0; i < sol.path.node_count(); ++i) {
        const double t = sol.path.time_at(i);
        CHECK(sol.path.scalar_value(i) == doctest::Approx(std::exp(-2.0 * t)).epsilon(1e-12));
    }
}

TEST_CASE("picard contraction: residual ratios stay within theta + 0.05") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(1.0);  // theta = 1/3
    std::vector<double> c0{1.0};
    auto cfg = config(32, 16);
    auto sol = picard_solve(proc, f, c0, cfg);
    CHECK(sol.theta == doctest::Approx(1.0 / 3.0));
    for (size_t k = 1; k + 1 < sol.residual_history.size(); ++k)
        CHECK(sol.residual_history[k + 1] <=
              (sol.theta + 0.05) * sol.residual_history[k]);
}

TEST_CASE("march is the oracle for picard") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(1.0);
    std::vector<double> c0{1.0};
    auto cfg = config(64, 24);
    auto marched = march(proc, f, c0, cfg);
    auto fixed = picard_solve(proc, f, c0, cfg);
    double diff = 0.0;
    for (int i = 0; i < marched.path.node_count(); ++i)
        diff = std::max(diff,
                        std::abs(marched.path.scalar_value(i) - fixed.path.scalar_value(i)));
    CHECK(diff <= 1e-8);
}

TEST_CASE("a-priori bound dominates the distance to the limit") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(2.0);  // theta = 2/3
    std::vector<double> c0{0.5};
    auto cfg = config(32, 16);
    cfg.track_iterates = true;
    auto sol = picard_solve(proc, f, c0, cfg);
    const double r0 = sol.residual_history.front();
    for (size_t k = 0; k < sol.iterate_errors.size(); ++k) {
        const double bound = std::pow(sol.theta, static_cast<double>(k)) / (1.0 - sol.theta) * r0;
        CHECK(sol.iterate_errors[k] <= bound * (1.0 + 1e-9) + 1e-14);
    }
}

TEST_CASE("picard residuals are non-increasing after the first iteration") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(2.7);  // theta = 0.9, observed rate smaller
    std::vector<double> c0{1.0};
    auto cfg = config(32, 16);
    cfg.picard_max_iter = 400;
    auto sol = picard_solve(proc, f, c0, cfg);
    for (size_t k = 1; k + 1 < sol.residual_history.size(); ++k)
        CHECK(sol.residual_history[k + 1] <= sol.residual_history[k] * (1.0 + 1e-12));
}

// The floored argument makes the discrete fixed-point map nilpotent on a
// finite horizon: node 0 is pinned by the initial condition and every sweep
// pins the next integer node, so even expansive maps settle within T + 2
// applications.  The cap errors therefore fire only when the cap is below
// that index.

TEST_CASE("expansive map under a tight cap names the contraction condition") {
    auto proc = EvolutionProcess::scalar(3.0);
    auto f = Nonlinearity::linear(4.0, std::vector<Drive>{standard_drive()}, 2.0);
    std::vector<double> c0{1.0};
    auto cfg = config(16, 8);
    cfg.picard_max_iter = 5;
    CHECK_THROWS_WITH_AS(picard_solve(proc, f, c0, cfg),
                         "contraction condition violated, no convergence", std::runtime_error);
}

TEST_CASE("expansive map still settles once the cap clears the horizon") {
    auto proc = EvolutionProcess::scalar(3.0);
    auto f = Nonlinearity::linear(4.0, std::vector<Drive>{standard_drive()}, 2.0);
    std::vector<double> c0{1.0};
    auto cfg = config(16, 8);
    cfg.picard_max_iter = 50;
    auto fixed = picard_solve(proc, f, c0, cfg);
    auto marched = march(proc, f, c0, cfg);
    double diff = 0.0;
    for (int i = 0; i < marched.path.node_count(); ++i)
        diff = std::max(diff,
                        std::abs(marched.path.scalar_value(i) - fixed.path.scalar_value(i)));
    CHECK(diff <= 1e-8);
    CHECK(fixed.iterations <= 12);
}

TEST_CASE("unreachable tolerance under a tight cap is reported as a grid floor") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(1.0);
    std::vector<double> c0{1.0};
    auto cfg = config(16, 8);
    cfg.picard_tol = 1e-30;
    cfg.picard_max_iter = 5;
    CHECK_THROWS_WITH_AS(picard_solve(proc, f, c0, cfg), "tolerance unreachable at this grid",
                         std::runtime_error);
}

TEST_CASE("solutions are continuous at integer nodes with a derivative kink") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(1.0);
    std::vector<double> c0{2.0};
    const int m = 128;
    auto sol = march(proc, f, c0, config(m, 8));
    const double h = 1.0 / m;
    for (int n = 1; n <= 7; ++n) {
        const double xm = sol.path.scalar_value(n * m - 1);
        const double x0 = sol.path.scalar_value(n * m);
        const double xp = sol.path.scalar_value(n * m + 1);
        // continuity: consecutive samples differ by O(h), no jump
        CHECK(std::abs(x0 - xm) <= 10.0 * h);
        const double left_slope = (x0 - xm) / h;
        const double right_slope = (xp - x0) / h;
        const auto& cn = sol.node_values[n];
        const auto& cp = sol.node_values[n - 1];
        const double expected_kink =
            std::abs(f.scalar(n, cn[0]) - f.scalar(n, cp[0]));
        CHECK(std::abs(std::abs(right_slope - left_slope) - expected_kink) <= 50.0 * h);
    }
    for (int t = 0; t <= sol.path.horizon(); ++t) CHECK(sol.path.continuous_at(t));
}

TEST_CASE("certify_sap passes the decaying homogeneous solution") {
    auto proc = EvolutionProcess::scalar(3.0, 1.0);
    auto f = Nonlinearity::zero(1);
    std::vector<double> c0{1.0};
    auto sol = march(proc, f, c0, config(16, 12));
    auto cert = certify_sap(sol, 1.0, 1.0);
    CHECK(cert.pass);
    // defect decays like exp(-3T)
    const auto& prof = cert.sup_profile;
    for (size_t i = 0; i < prof.T.size(); i += 40) {
        const double expected = std::exp(-3.0 * prof.T[i]) * (1.0 - std::exp(-3.0));
        CHECK(prof.defect[i] <= expected * 1.05 + 1e-14);
    }
}

TEST_CASE("certify_sap fails the ramp-driven solution") {
    auto proc = EvolutionProcess::scalar(1.0, 1.0);
    auto f = Nonlinearity::ramp(1);
    std::vector<double> c0{0.0};
    auto sol = march(proc, f, c0, config(16, 12));
    auto cert = certify_sap(sol, 1.0, 1.0);
    CHECK(!cert.sup_pass);
    CHECK(!cert.pass);
}

TEST_CASE("node values mirror the path at integer nodes bit for bit") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::scalar_benchmark(1.0);
    std::vector<double> c0{1.0};
    const int m = 32;
    for (auto sol : {march(proc, f, c0, config(m, 8)), picard_solve(proc, f, c0, config(m, 8))}) {
        REQUIRE(sol.node_values.size() == 9);
        for (int n = 0; n <= 8; ++n)
            CHECK(sol.node_values[n][0] == sol.path.scalar_value(n * m));
    }
}

TEST_CASE("certify_sap needs four periods of horizon") {
    auto proc = EvolutionProcess::scalar(3.0, 2.0);
    auto f = Nonlinearity::zero(1);
    std::vector<double> c0{1.0};
    auto sol = march(proc, f, c0, config(8, 4));
    CHECK_THROWS_AS(certify_sap(sol, 2.0, 1.0), std::invalid_argument);
}
