#ifndef EPCA_NONLINEARITY_HPP
#define EPCA_NONLINEARITY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace epca {

using Drive = std::function<double(double)>;

// Asymptotically 2-periodic scalar drive sin(pi t) + 1/(1+t): a wave plus an
// algebraically decaying offset.  The workhorse forcing for demos and tests.
Drive standard_drive();

// State-and-time forcing f(t, x) with a declared Lipschitz constant and
// asymptotic period.  Instances come from the factory catalog below; the
// declared constants are validated empirically by lipschitz_estimate.
class Nonlinearity {
public:
    using EvalFn = std::function<void(double, std::span<const double>, std::span<double>)>;

    Nonlinearity(std::string name, int dim, double lipschitz, double omega, EvalFn fn);

    const std::string& name() const { return name_; }
    int dimension() const { return dim_; }
    double lipschitz() const { return lipschitz_; }
    double omega() const { return omega_; }

    void eval(double t, std::span<const double> x, std::span<double> out) const;
    std::vector<double> operator()(double t, std::span<const double> x) const;
    double scalar(double t, double x) const;

    // f(t, x) = coeff * x + g(t)   (componentwise; L = |coeff|)
    static Nonlinearity linear(double coeff, std::vector<Drive> drives, double omega);
    // f(t, x)_n = beta * x_n / (1 + x_n^2) + g_n(t)   (L = beta; slope peaks at 0)
    static Nonlinearity rational(double beta, std::vector<Drive> drives, double omega);
    // f(t, x)_n = beta * sin(x_n)                     (L = beta)
    static Nonlinearity sine(double beta, int dim, double omega);
    // pure time forcing, no state dependence (L = 0)
    static Nonlinearity forcing(std::vector<Drive> drives, double omega);
    static Nonlinearity zero(int dim);
    // f(t, x) = t in every component: unbounded in t, deliberately violates
    // the asymptotic-periodicity hypothesis (for negative tests)
    static Nonlinearity ramp(int dim);

    // Scalar benchmark instance: rational state term with the standard drive,
    // f(t, u) = L u/(1+u^2) + sin(pi t) + 1/(1+t), omega = 2.
    static Nonlinearity scalar_benchmark(double lipschitz);

private:
    std::string name_;
    int dim_;
    double lipschitz_;
    double omega_;
    EvalFn fn_;
};

struct SampleBox {
    double lo = -1.0;
    double hi = 1.0;
    double t_max = 10.0;
};

// Empirical Lipschitz constant: max over sampled (t, x, y) of
// |f(t,x) - f(t,y)| / |x - y|.  Half the pairs are independent draws, half
// are close pairs so that local slopes are seen.  Deterministic given seed.
double lipschitz_estimate(const Nonlinearity& f, const SampleBox& box, int n_samples,
                          uint64_t seed = 42);

// Declared-constant validation: estimate must not exceed L * (1 + 1e-9).
bool validate_lipschitz(const Nonlinearity& f, const SampleBox& box, int n_samples = 4000,
                        uint64_t seed = 42);

}  // namespace epca

#endif
