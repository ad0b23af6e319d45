#ifndef EPCA_EVOLUTION_HPP
#define EPCA_EVOLUTION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace epca {

// Scalar periodic potential q(t) = mean + amplitude * sin(2 pi t / period),
// with the closed-form antiderivative used by the evolution factors.
struct Potential {
    double mean = 0.0;
    double amplitude = 0.0;
    double period = 1.0;

    double value(double t) const;
    double antiderivative(double t) const;
};

/*
 * Two-parameter solution operator U(t, s), t >= s >= 0, of the linear part
 * x' = A(t) x for diagonal A(t) = diag(rates) + q(t) I.  Mode n scales by
 *
 *   exp( rate_n * (t - s) + Q(t) - Q(s) ),    Q' = q.
 *
 * Required axioms (certified numerically, not assumed):
 *   identity     U(t,t) = I
 *   cocycle      U(t,s) U(s,r) = U(t,r)
 *   continuity   (t,s) -> U(t,s) x continuous
 *   periodicity  U(t+omega, s+omega) = U(t,s)
 *   decay        |U(t,s)| <= K exp(-a (t-s))
 */
class EvolutionProcess {
public:
    EvolutionProcess(std::string name, std::vector<double> rates,
                     std::optional<Potential> potential, double K, double a, double omega);

    // single decaying mode with rate -a, K = 1
    static EvolutionProcess scalar(double a, double omega = 1.0);
    static EvolutionProcess diagonal(std::vector<double> rates, double K, double a,
                                     double omega, std::optional<Potential> potential = {});

    const std::string& name() const { return name_; }
    int dimension() const { return static_cast<int>(rates_.size()); }
    double stability_K() const { return K_; }
    double decay_rate() const { return a_; }
    double period() const { return omega_; }
    const std::vector<double>& rates() const { return rates_; }
    const std::optional<Potential>& potential() const { return potential_; }

    double factor(int mode, double t, double s) const;
    void apply(double t, double s, std::span<const double> x, std::span<double> out) const;
    std::vector<double> apply(double t, double s, std::span<const double> x) const;

private:
    std::string name_;
    std::vector<double> rates_;
    std::optional<Potential> potential_;
    double K_;
    double a_;
    double omega_;
};

struct TimeTriple {
    double t, s, r;
};
struct TimePair {
    double t, s;
};

// max over samples of |U(t,s)U(s,r)x - U(t,r)x| / |x|
double check_cocycle(const EvolutionProcess& proc, std::span<const TimeTriple> triples,
                     std::span<const std::vector<double>> states);

// (max relative periodicity residual, max decay excess over K)
std::pair<double, double> check_periodicity_and_decay(const EvolutionProcess& proc,
                                                      std::span<const TimePair> pairs,
                                                      std::span<const std::vector<double>> states);

struct ProcessReport {
    std::string process;
    int samples = 0;
    uint64_t seed = 0;
    double identity_residual = 0.0;
    double cocycle_residual = 0.0;
    double periodicity_residual = 0.0;
    double decay_excess = 0.0;
    double continuity_ratio = 0.0;   // finite-difference modulus |dU x| / (delta |x|)
    double continuity_bound = 0.0;

    bool pass(double tol = 1e-12) const;
    std::string to_text() const;
};

// Samples all five axioms at seeded random arguments.  Time gaps stay within
// a few units so the fastest modes do not underflow into denormals.
ProcessReport verify_process(const EvolutionProcess& proc, int n_samples, uint64_t seed);

}  // namespace epca

#endif
