#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epca/heat.hpp"

using namespace epca;

namespace {
double heat_Q(double t) { return -3.0 * t - std::cos(M_PI * t) / M_PI; }
}

TEST_CASE("projecting an eigenfunction gives a unit coordinate") {
    auto coeffs = project_initial([](double x) { return heat_eigenfunction(1, x); }, 257, 8);
    CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 1; n < 8; ++n) CHECK(std::abs(coeffs[n]) <= 1e-12);
}

TEST_CASE("projecting x(pi - x) recovers the odd-mode closed form") {
    auto coeffs = project_initial([](double x) { return x * (M_PI - x); }, 1025, 8);
    for (int n = 1; n <= 8; ++n) {
        const double expected =
            (n % 2 == 1) ? std::sqrt(2.0 / M_PI) * 4.0 / (n * n * n) : 0.0;
        CHECK(coeffs[n - 1] == doctest::Approx(expected).epsilon(1e-7).scale(1.0));
    }
    // reconstruction error is controlled by the truncation tail sum 4/n^3
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double x = M_PI * i / 64.0;
        worst = std::max(worst, std::abs(reconstruct(coeffs, x) - x * (M_PI - x)));
    }
    double tail = 0.0;
    for (int n = 9; n < 4000; n += 2) tail += std::sqrt(2.0 / M_PI) * (4.0 / (n * n * n));
    CHECK(worst <= tail * std::sqrt(2.0 / M_PI) + 1e-6);
}

TEST_CASE("projecting zero data gives zero coordinates") {
    auto coeffs = project_initial([](double) { return 0.0; }, 129, 4);
    for (double c : coeffs) CHECK(c == 0.0);
}

TEST_CASE("projection insists on Dirichlet data") {
    CHECK_THROWS_WITH_AS(project_initial([](double x) { return std::cos(x); }, 129, 4),
                         "Dirichlet data required", std::invalid_argument);
}

TEST_CASE("heat process carries the closed-form constants") {
    auto proc = build_heat_process(16);
    CHECK(proc.stability_K() == 1.0);
    CHECK(proc.decay_rate() == 3.0);
    CHECK(proc.period() == 2.0);
    CHECK(proc.factor(0, 2.0, 0.0) == doctest::Approx(std::exp(-8.0)).epsilon(1e-13));
    // the potential antiderivative drops exactly 6 per period
    CHECK(proc.potential()->antiderivative(3.0) - proc.potential()->antiderivative(1.0) ==
          doctest::Approx(-6.0).epsilon(1e-14));
}

TEST_CASE("spatial reconstruction matches an independent dense sum at pi/2") {
    std::vector<double> coeffs(16);
    for (int n = 0; n < 16; ++n) coeffs[n] = 1.0 / ((n + 1.0) * (n + 1.0));
    const double direct = reconstruct(coeffs, M_PI / 2.0);
    long double acc = 0.0L;
    for (int n = 16; n >= 1; --n)
        acc += static_cast<long double>(coeffs[n - 1]) *
               std::sqrt(2.0L / M_PI) * std::sin(n * M_PI / 2.0L);
    CHECK(direct == doctest::Approx(static_cast<double>(acc)).epsilon(1e-10));
}

TEST_CASE("pure decay demo follows the closed-form first mode") {
    HeatInstance inst;
    inst.modes = 8;
    inst.beta = 0.0;
    inst.drive_amplitude.assign(8, 0.0);
    SolverConfig cfg;
    cfg.steps_per_unit = 32;
    cfg.horizon = 12;
    auto demo = run_heat_demo(inst, cfg);
    CHECK(demo.pass);
    CHECK(demo.theta == 0.0);
    const auto& path = demo.march_solution.path;
    for (int i = 0; i < path.node_count(); i += 17) {
        const double t = path.time_at(i);
        const double expected = std::exp(-t + heat_Q(t) - heat_Q(0.0));
        CHECK(path.value(i)[0] == doctest::Approx(expected).epsilon(1e-10));
        for (int n = 1; n < 8; ++n) CHECK(path.value(i)[n] == 0.0);
    }
    // the defect profile decays like exp(-4T)
    const auto& prof = demo.certificate.sup_profile;
    for (size_t i = 0; i < prof.T.size(); i += 100)
        CHECK(prof.defect[i] <= 1.2 * std::exp(-4.0 * prof.T[i] + 2.0 / M_PI));
}

TEST_CASE("modal energy decays within the integrated potential bound") {
    HeatInstance inst;
    inst.modes = 6;
    inst.beta = 0.0;
    inst.drive_amplitude.assign(6, 0.0);
    inst.c0 = {1.0, -0.5, 0.25, 0.0, 0.125, 0.0};
    SolverConfig cfg;
    cfg.steps_per_unit = 16;
    cfg.horizon = 8;
    auto demo = run_heat_demo(inst, cfg);
    const auto& path = demo.march_solution.path;
    const double u0 = norm2(path.value(0));
    for (int i = 1; i < path.node_count(); i += 7) {
        const double t = path.time_at(i);
        CHECK(norm2(path.value(i)) <= std::exp(-3.0 * t + 2.0 / M_PI) * u0 * (1.0 + 1e-12));
    }
    // full periods see the bare exp(-3 dt) factor
    const int m = cfg.steps_per_unit;
    for (int t = 0; t + 2 <= cfg.horizon; ++t)
        CHECK(norm2(path.value((t + 2) * m)) <=
              std::exp(-6.0) * norm2(path.value(t * m)) * (1.0 + 1e-12));
}

TEST_CASE("driven demo passes certification and agrees across solvers") {
    HeatInstance inst;  // defaults: 16 modes, beta 1, modal drive on mode 1
    SolverConfig cfg;
    cfg.steps_per_unit = 32;
    cfg.horizon = 24;
    auto demo = run_heat_demo(inst, cfg);
    CHECK(demo.theta == doctest::Approx(1.0 / 3.0));
    CHECK(demo.pass);
    CHECK(demo.cross_check <= 1e-8);
    CHECK(demo.picard_solution.iterations <= 30);
    CHECK(demo.report.find("verdict: PASS") != std::string::npos);
}

TEST_CASE("truncation is exact for in-span data") {
    SolverConfig cfg;
    cfg.steps_per_unit = 16;
    cfg.horizon = 8;
    HeatInstance small;
    small.modes = 8;
    small.beta = 1.0;
    small.drive_amplitude.assign(8, 0.0);
    small.drive_amplitude[0] = 1.0;
    HeatInstance large = small;
    large.modes = 12;
    large.drive_amplitude.assign(12, 0.0);
    large.drive_amplitude[0] = 1.0;
    large.c0.assign(12, 0.0);
    large.c0[0] = 1.0;
    auto a = run_heat_demo(small, cfg);
    auto b = run_heat_demo(large, cfg);
    const auto& pa = a.picard_solution.path;
    const auto& pb = b.picard_solution.path;
    for (int i = 0; i < pa.node_count(); i += 11) {
        for (int n = 0; n < 8; ++n)
            CHECK(pa.value(i)[n] == doctest::Approx(pb.value(i)[n]).epsilon(1e-12));
        for (int n = 8; n < 12; ++n) CHECK(pb.value(i)[n] == 0.0);
    }
}

TEST_CASE("pointwise sine forcing respects its declared Lipschitz constant") {
    HeatInstance inst;
    inst.modes = 8;
    inst.beta = 2.0;
    inst.forcing = HeatForcing::pointwise_sine;
    auto f = inst.make_nonlinearity();
    CHECK(f.lipschitz() == 2.0);
    CHECK(validate_lipschitz(f, {-2.0, 2.0, 4.0}, 800));
    // a strongly coupled but contractive run still certifies
    SolverConfig cfg;
    cfg.steps_per_unit = 16;
    cfg.horizon = 8;
    inst.c0 = project_initial([](double x) { return x * (M_PI - x); }, 257, 8);
    auto demo = run_heat_demo(inst, cfg);
    CHECK(demo.theta == doctest::Approx(2.0 / 3.0));
    CHECK(demo.cross_check <= 1e-8);
}

TEST_CASE("nearly critical beta converges against the formal iteration bound") {
    HeatInstance inst;
    inst.modes = 4;
    inst.beta = 2.9;  // theta just below 1; formal bound ~ 700 iterations
    inst.drive_amplitude.assign(4, 0.0);
    inst.drive_amplitude[0] = 1.0;
    inst.c0.assign(4, 0.0);
    inst.c0[0] = 1.0;
    SolverConfig cfg;
    cfg.steps_per_unit = 16;
    cfg.horizon = 8;
    cfg.picard_max_iter = 800;
    auto demo = run_heat_demo(inst, cfg);
    CHECK(demo.theta == doctest::Approx(2.9 / 3.0));
    CHECK(demo.picard_solution.iterations < 800);
    CHECK(demo.cross_check <= 1e-7);
}
