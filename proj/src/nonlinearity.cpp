#include "epca/nonlinearity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace epca {

Drive standard_drive() {
    return [](double t) { return std::sin(M_PI * t) + 1.0 / (1.0 + t); };
}

Nonlinearity::Nonlinearity(std::string name, int dim, double lipschitz, double omega, EvalFn fn)
    : name_(std::move(name)), dim_(dim), lipschitz_(lipschitz), omega_(omega), fn_(std::move(fn)) {
    if (dim_ < 1) throw std::invalid_argument("nonlinearity dimension must be >= 1");
    if (lipschitz_ < 0.0) throw std::invalid_argument("Lipschitz constant must be >= 0");
    if (omega_ <= 0.0) throw std::invalid_argument("asymptotic period must be > 0");
}

void Nonlinearity::eval(double t, std::span<const double> x, std::span<double> out) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(out.size()) != dim_)
        throw std::invalid_argument("nonlinearity dimension mismatch");
    fn_(t, x, out);
}

std::vector<double> Nonlinearity::operator()(double t, std::span<const double> x) const {
    std::vector<double> out(dim_);
    eval(t, x, out);
    return out;
}

double Nonlinearity::scalar(double t, double x) const {
    double out;
    eval(t, std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

namespace {
double drive_at(const std::vector<Drive>& g, size_t n, double t) {
    return (n < g.size() && g[n]) ? g[n](t) : 0.0;
}
}  // namespace

Nonlinearity Nonlinearity::linear(double coeff, std::vector<Drive> drives, double omega) {
    const int d = static_cast<int>(drives.size());
    return Nonlinearity(
        "linear", d, std::abs(coeff), omega,
        [coeff, g = std::move(drives)](double t, std::span<const double> x, std::span<double> out) {
            for (size_t n = 0; n < x.size(); ++n) out[n] = coeff * x[n] + drive_at(g, n, t);
        });
}

Nonlinearity Nonlinearity::rational(double beta, std::vector<Drive> drives, double omega) {
    const int d = static_cast<int>(drives.size());
    return Nonlinearity(
        "rational", d, beta, omega,
        [beta, g = std::move(drives)](double t, std::span<const double> x, std::span<double> out) {
            for (size_t n = 0; n < x.size(); ++n)
                out[n] = beta * x[n] / (1.0 + x[n] * x[n]) + drive_at(g, n, t);
        });
}

Nonlinearity Nonlinearity::sine(double beta, int dim, double omega) {
    return Nonlinearity("sine", dim, beta, omega,
                        [beta](double, std::span<const double> x, std::span<double> out) {
                            for (size_t n = 0; n < x.size(); ++n) out[n] = beta * std::sin(x[n]);
                        });
}

Nonlinearity Nonlinearity::forcing(std::vector<Drive> drives, double omega) {
    const int d = static_cast<int>(drives.size());
    return Nonlinearity(
        "forcing", d, 0.0, omega,
        [g = std::move(drives)](double t, std::span<const double> x, std::span<double> out) {
            for (size_t n = 0; n < x.size(); ++n) out[n] = drive_at(g, n, t);
        });
}

Nonlinearity Nonlinearity::zero(int dim) {
    return Nonlinearity("zero", dim, 0.0, 1.0,
                        [](double, std::span<const double>, std::span<double> out) {
                            std::fill(out.begin(), out.end(), 0.0);
                        });
}

Nonlinearity Nonlinearity::ramp(int dim) {
    return Nonlinearity("ramp", dim, 0.0, 1.0,
                        [](double t, std::span<const double>, std::span<double> out) {
                            std::fill(out.begin(), out.end(), t);
                        });
}

Nonlinearity Nonlinearity::scalar_benchmark(double lipschitz) {
    return rational(lipschitz, {standard_drive()}, 2.0);
}

double lipschitz_estimate(const Nonlinearity& f, const SampleBox& box, int n_samples,
                          uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("lipschitz_estimate needs n_samples >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ub(box.lo, box.hi);
    std::uniform_real_distribution<double> ut(0.0, box.t_max);
    std::uniform_real_distribution<double> us(-1.0, 1.0);
    const int d = f.dimension();
    const double close_scale = 1e-4 * (box.hi - box.lo);
    std::vector<double> x(d), y(d), fx(d), fy(d);
    double best = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double t = ut(rng);
        for (int c = 0; c < d; ++c) x[c] = ub(rng);
        if (i % 2 == 0) {
            for (int c = 0; c < d; ++c) y[c] = ub(rng);
        } else {
            for (int c = 0; c < d; ++c) y[c] = x[c] + close_scale * us(rng);
        }
        double dist = 0.0;
        for (int c = 0; c < d; ++c) dist += (x[c] - y[c]) * (x[c] - y[c]);
        dist = std::sqrt(dist);
        if (dist < 1e-14) continue;
        f.eval(t, x, fx);
        f.eval(t, y, fy);
        double df = 0.0;
        for (int c = 0; c < d; ++c) df += (fx[c] - fy[c]) * (fx[c] - fy[c]);
        best = std::max(best, std::sqrt(df) / dist);
    }
    return best;
}

bool validate_lipschitz(const Nonlinearity& f, const SampleBox& box, int n_samples,
                        uint64_t seed) {
    return lipschitz_estimate(f, box, n_samples, seed) <= f.lipschitz() * (1.0 + 1e-9);
}

}  // namespace epca
