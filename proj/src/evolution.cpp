#include "epca/evolution.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "epca/sampled_path.hpp"

namespace epca {

double Potential::value(double t) const {
    return mean + amplitude * std::sin(2.0 * M_PI * t / period);
}

double Potential::antiderivative(double t) const {
    return mean * t - amplitude * (period / (2.0 * M_PI)) * std::cos(2.0 * M_PI * t / period);
}

EvolutionProcess::EvolutionProcess(std::string name, std::vector<double> rates,
                                   std::optional<Potential> potential, double K, double a,
                                   double omega)
    : name_(std::move(name)),
      rates_(std::move(rates)),
      potential_(potential),
      K_(K),
      a_(a),
      omega_(omega) {
    if (rates_.empty()) throw std::invalid_argument("process needs at least one mode");
    if (K_ <= 0.0 || a_ <= 0.0) throw std::invalid_argument("stability constants must be positive");
    if (omega_ <= 0.0) throw std::invalid_argument("period must be positive");
}

EvolutionProcess EvolutionProcess::scalar(double a, double omega) {
    return EvolutionProcess("scalar", {-a}, std::nullopt, 1.0, a, omega);
}

EvolutionProcess EvolutionProcess::diagonal(std::vector<double> rates, double K, double a,
                                            double omega, std::optional<Potential> potential) {
    return EvolutionProcess("diagonal", std::move(rates), potential, K, a, omega);
}

double EvolutionProcess::factor(int mode, double t, double s) const {
    double arg = rates_[mode] * (t - s);
    if (potential_) arg += potential_->antiderivative(t) - potential_->antiderivative(s);
    return std::exp(arg);
}

void EvolutionProcess::apply(double t, double s, std::span<const double> x,
                             std::span<double> out) const {
    if (t < s) throw std::invalid_argument("evolution runs forward only");
    if (s < 0.0) throw std::invalid_argument("evolution is defined on t >= s >= 0");
    if (static_cast<int>(x.size()) != dimension())
        throw std::invalid_argument("state dimension mismatch");
    const double dq =
        potential_ ? potential_->antiderivative(t) - potential_->antiderivative(s) : 0.0;
    for (size_t n = 0; n < x.size(); ++n) out[n] = std::exp(rates_[n] * (t - s) + dq) * x[n];
}

std::vector<double> EvolutionProcess::apply(double t, double s, std::span<const double> x) const {
    std::vector<double> out(x.size());
    apply(t, s, x, out);
    return out;
}

double check_cocycle(const EvolutionProcess& proc, std::span<const TimeTriple> triples,
                     std::span<const std::vector<double>> states) {
    double worst = 0.0;
    std::vector<double> mid, two_step, direct;
    for (size_t i = 0; i < triples.size(); ++i) {
        const auto& [t, s, r] = triples[i];
        if (!(t >= s && s >= r)) throw std::invalid_argument("cocycle triples need t >= s >= r");
        const auto& x = states[i % states.size()];
        mid = proc.apply(s, r, x);
        two_step = proc.apply(t, s, mid);
        direct = proc.apply(t, r, x);
        worst = std::max(worst, distance2(two_step, direct) / norm2(x));
    }
    return worst;
}

std::pair<double, double> check_periodicity_and_decay(const EvolutionProcess& proc,
                                                      std::span<const TimePair> pairs,
                                                      std::span<const std::vector<double>> states) {
    const double omega = proc.period();
    double periodicity = 0.0, excess = 0.0;
    std::vector<double> base, shifted;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const auto& [t, s] = pairs[i];
        if (t < s) throw std::invalid_argument("pairs need t >= s");
        const auto& x = states[i % states.size()];
        base = proc.apply(t, s, x);
        shifted = proc.apply(t + omega, s + omega, x);
        const double scale = std::max({norm2(base), norm2(shifted), 1e-300});
        periodicity = std::max(periodicity, distance2(base, shifted) / scale);
        const double growth = norm2(base) * std::exp(proc.decay_rate() * (t - s)) / norm2(x);
        excess = std::max(excess, growth - proc.stability_K());
    }
    return {periodicity, excess};
}

bool ProcessReport::pass(double tol) const {
    return identity_residual <= tol && cocycle_residual <= tol && periodicity_residual <= tol &&
           decay_excess <= tol && continuity_ratio <= continuity_bound;
}

std::string ProcessReport::to_text() const {
    std::ostringstream os;
    os << "process: " << process << "\n"
       << "samples: " << samples << "\n"
       << "seed: " << seed << "\n";
    os.precision(3);
    os << std::scientific << "identity_residual: " << identity_residual << "\n"
       << "cocycle_residual: " << cocycle_residual << "\n"
       << "periodicity_residual: " << periodicity_residual << "\n"
       << "decay_excess: " << decay_excess << "\n"
       << "continuity_ratio: " << continuity_ratio << "\n"
       << "continuity_bound: " << continuity_bound << "\n";
    return os.str();
}

ProcessReport verify_process(const EvolutionProcess& proc, int n_samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u_origin(0.0, 10.0);
    std::uniform_real_distribution<double> u_gap(0.0, 2.5);
    std::uniform_real_distribution<double> u_state(-1.0, 1.0);
    const int d = proc.dimension();

    auto draw_state = [&]() {
        std::vector<double> x(d);
        do {
            for (int c = 0; c < d; ++c) x[c] = u_state(rng);
        } while (norm2(x) < 1e-3);
        return x;
    };

    std::vector<std::vector<double>> states(16);
    for (auto& x : states) x = draw_state();

    ProcessReport rep;
    rep.process = proc.name();
    rep.samples = n_samples;
    rep.seed = seed;

    std::vector<TimeTriple> triples(n_samples);
    std::vector<TimePair> pairs(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double r = u_origin(rng);
        const double s = r + u_gap(rng);
        const double t = s + u_gap(rng);
        triples[i] = {t, s, r};
        pairs[i] = {s + u_gap(rng), s};
    }

    // identity: U(t, t) x = x, bit for bit in exact arithmetic
    std::vector<double> out(d);
    for (int i = 0; i < n_samples; ++i) {
        const double t = u_origin(rng);
        const auto& x = states[i % states.size()];
        proc.apply(t, t, x, out);
        rep.identity_residual =
            std::max(rep.identity_residual, distance2(out, x) / norm2(x));
    }

    rep.cocycle_residual = check_cocycle(proc, triples, states);
    auto [periodicity, excess] = check_periodicity_and_decay(proc, pairs, states);
    rep.periodicity_residual = periodicity;
    rep.decay_excess = excess;

    // continuity via a finite-difference modulus: the factor derivative is
    // (rate_n + q(t)) U, so |dU x| <= (max|rate| + sup|q|) K |x| per unit time
    double rate_scale = 0.0;
    for (double r : proc.rates()) rate_scale = std::max(rate_scale, std::abs(r));
    double q_scale = 0.0;
    if (proc.potential())
        q_scale = std::abs(proc.potential()->mean) + std::abs(proc.potential()->amplitude);
    rep.continuity_bound = 1.05 * proc.stability_K() * (rate_scale + q_scale) + 1.0;
    const double delta = 1e-6;
    std::vector<double> out2(d);
    for (int i = 0; i < std::min(n_samples, 1000); ++i) {
        const double s = u_origin(rng);
        const double t = s + u_gap(rng);
        const auto& x = states[i % states.size()];
        proc.apply(t, s, x, out);
        proc.apply(t + delta, s, x, out2);
        rep.continuity_ratio =
            std::max(rep.continuity_ratio, distance2(out, out2) / (delta * norm2(x)));
    }
    return rep;
}

}  // namespace epca
