#include "epca/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epca/interpolation.hpp"

namespace epca {

void SolverConfig::validate() const {
    if (steps_per_unit < 2) throw std::invalid_argument("grid step must be 1/m with m >= 2");
    if (horizon < 1) throw std::invalid_argument("horizon must be a positive integer");
    points_for_order(quad_order);
    if (picard_tol <= 0.0) throw std::invalid_argument("picard tolerance must be > 0");
    if (picard_max_iter < 1) throw std::invalid_argument("iteration cap must be >= 1");
}

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// One substep of the Duhamel integral: state <- U(tb, ta) state + panel,
// with panel values of the forcing interpolated from `slice`.
void advance_substep(const EvolutionProcess& proc, double ta, double tb, int local_substep,
                     const detail::SliceView& slice, const GaussRule& rule,
                     std::span<double> state, std::span<double> gbuf) {
    const int d = static_cast<int>(state.size());
    const double h = tb - ta;
    const double qa = proc.potential() ? proc.potential()->antiderivative(ta) : 0.0;
    const double qb = proc.potential() ? proc.potential()->antiderivative(tb) : 0.0;
    const auto& rates = proc.rates();
    for (int c = 0; c < d; ++c) state[c] *= std::exp(rates[c] * h + (qb - qa));
    for (size_t k = 0; k < rule.u.size(); ++k) {
        const double s = ta + h * rule.u[k];
        detail::eval_slice(slice, local_substep, rule.u[k], gbuf);
        const double w = h * rule.w[k];
        const double qs = proc.potential() ? proc.potential()->antiderivative(s) : 0.0;
        for (int c = 0; c < d; ++c)
            state[c] += w * std::exp(rates[c] * (tb - s) + (qb - qs)) * gbuf[c];
    }
}

}  // namespace

MildSolution march(const EvolutionProcess& proc, const Nonlinearity& f,
                   std::span<const double> c0, const SolverConfig& cfg) {
    cfg.validate();
    const int d = proc.dimension();
    if (f.dimension() != d || static_cast<int>(c0.size()) != d)
        throw std::invalid_argument("process, nonlinearity and initial state dimensions differ");
    const int m = cfg.steps_per_unit;
    const int T = cfg.horizon;
    const GaussRule rule = gauss_rule(points_for_order(cfg.quad_order));

    std::vector<double> values(static_cast<size_t>(T * m + 1) * d);
    std::copy(c0.begin(), c0.end(), values.begin());

    std::vector<double> forcing(static_cast<size_t>(m + 1) * d);
    std::vector<double> state(c0.begin(), c0.end());
    std::vector<double> gbuf(d);
    std::vector<std::vector<double>> node_values;
    node_values.reserve(T + 1);
    node_values.emplace_back(c0.begin(), c0.end());

    for (int n = 0; n < T; ++n) {
        const auto& cn = node_values.back();
        for (int i = 0; i <= m; ++i) {
            const double t = static_cast<double>(n * m + i) / m;
            f.eval(t, cn, std::span<double>(forcing.data() + static_cast<size_t>(i) * d, d));
        }
        const detail::SliceView slice{forcing.data(), m + 1, d, nullptr};
        for (int j = 0; j < m; ++j) {
            const double ta = static_cast<double>(n * m + j) / m;
            const double tb = static_cast<double>(n * m + j + 1) / m;
            advance_substep(proc, ta, tb, j, slice, rule, state, gbuf);
            if (!all_finite(state)) throw std::runtime_error("divergent trajectory");
            std::copy(state.begin(), state.end(),
                      values.begin() + static_cast<size_t>(n * m + j + 1) * d);
        }
        node_values.emplace_back(state);
    }

    MildSolution sol{SampledPath(m, d, std::move(values), SegmentKind::piecewise),
                     std::move(node_values), SolveMethod::march};
    sol.theta = f.lipschitz() * proc.stability_K() / proc.decay_rate();
    return sol;
}

SampledPath lambda_transform(const EvolutionProcess& proc, const SampledPath& forcing,
                             int quad_order) {
    const int d = proc.dimension();
    if (forcing.dimension() != d)
        throw std::invalid_argument("process and forcing dimensions differ");
    const int m = forcing.steps_per_unit();
    const int n = forcing.node_count();
    const GaussRule rule = gauss_rule(points_for_order(quad_order));

    std::vector<double> values(static_cast<size_t>(n) * d, 0.0);
    std::vector<double> state(d, 0.0);
    std::vector<double> gbuf(d);
    std::vector<double> interval(static_cast<size_t>(m + 1) * d);

    for (int unit = 0; unit < forcing.horizon(); ++unit) {
        // one contiguous slice per unit interval, right endpoint replaced by
        // the stored left limit so panels never see the next interval
        std::copy(forcing.raw_values().begin() + static_cast<size_t>(unit) * m * d,
                  forcing.raw_values().begin() + (static_cast<size_t>(unit) * m + m + 1) * d,
                  interval.begin());
        if (forcing.kind() == SegmentKind::step) {
            // left limit at unit+1 is the interval's own constant
            std::copy(interval.begin(), interval.begin() + d,
                      interval.begin() + static_cast<size_t>(m) * d);
        } else if (forcing.kind() == SegmentKind::piecewise) {
            auto lv = forcing.left_value(unit + 1);
            std::copy(lv.begin(), lv.end(), interval.begin() + static_cast<size_t>(m) * d);
        }
        const detail::SliceView slice{interval.data(), m + 1, d, nullptr};
        for (int j = 0; j < m; ++j) {
            const double ta = static_cast<double>(unit * m + j) / m;
            const double tb = static_cast<double>(unit * m + j + 1) / m;
            advance_substep(proc, ta, tb, j, slice, rule, state, gbuf);
            if (!all_finite(state)) throw std::runtime_error("divergent trajectory");
            std::copy(state.begin(), state.end(),
                      values.begin() + static_cast<size_t>(unit * m + j + 1) * d);
        }
    }
    return SampledPath(m, d, std::move(values), SegmentKind::piecewise);
}

MildSolution picard_solve(const EvolutionProcess& proc, const Nonlinearity& f,
                          std::span<const double> c0, const SolverConfig& cfg) {
    cfg.validate();
    const int d = proc.dimension();
    if (f.dimension() != d || static_cast<int>(c0.size()) != d)
        throw std::invalid_argument("process, nonlinearity and initial state dimensions differ");
    const int m = cfg.steps_per_unit;
    const int T = cfg.horizon;
    const double theta = f.lipschitz() * proc.stability_K() / proc.decay_rate();

    // homogeneous term, directly per node
    const int n = T * m + 1;
    std::vector<double> homogeneous(static_cast<size_t>(n) * d);
    for (int i = 0; i < n; ++i)
        proc.apply(static_cast<double>(i) / m, 0.0, c0,
                   std::span<double>(homogeneous.data() + static_cast<size_t>(i) * d, d));

    SampledPath phi = SampledPath::constant(c0, m, T);
    phi.set_kind(SegmentKind::piecewise);
    std::vector<SampledPath> iterates;
    if (cfg.track_iterates) iterates.push_back(phi);

    MildSolution sol{phi, {}, SolveMethod::picard};
    sol.theta = theta;

    bool converged = false;
    for (int k = 0; k < cfg.picard_max_iter; ++k) {
        const SampledPath composed = compose_nonlinearity(f, phi, /*floored=*/true);
        SampledPath next = lambda_transform(proc, composed, cfg.quad_order);
        {
            auto& v = next.raw_values();
            for (size_t i = 0; i < v.size(); ++i) v[i] += homogeneous[i];
        }
        double residual = 0.0;
        for (int i = 0; i < n; ++i)
            residual = std::max(residual, distance2(next.value(i), phi.value(i)));
        sol.residual_history.push_back(residual);
        phi = std::move(next);
        if (cfg.track_iterates) iterates.push_back(phi);
        if (residual <= cfg.picard_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        if (theta >= 1.0)
            throw std::runtime_error("contraction condition violated, no convergence");
        throw std::runtime_error("tolerance unreachable at this grid");
    }

    sol.iterations = static_cast<int>(sol.residual_history.size()) - 1;
    sol.path = std::move(phi);
    sol.node_values.reserve(T + 1);
    for (int t = 0; t <= T; ++t) {
        auto v = sol.path.value(t * m);
        sol.node_values.emplace_back(v.begin(), v.end());
    }
    if (cfg.track_iterates) {
        for (const auto& it : iterates) {
            double err = 0.0;
            for (int i = 0; i < n; ++i)
                err = std::max(err, distance2(it.value(i), sol.path.value(i)));
            sol.iterate_errors.push_back(err);
        }
    }
    return sol;
}

SapCertificate certify_sap(const MildSolution& sol, double omega, double p, double tolerance) {
    if (sol.path.horizon() < 4.0 * omega)
        throw std::invalid_argument("horizon too short: need at least 4 periods");
    SapCertificate cert;
    cert.tolerance = tolerance;
    cert.sup_profile = sup_defect_profile(sol.path, omega);
    cert.sp_profile = stepanov_defect_profile(sol.path, omega, p);
    cert.sup_pass = cert.sup_profile.decays(tolerance);
    cert.sp_pass = cert.sp_profile.decays(tolerance);
    cert.pass = cert.sup_pass && cert.sp_pass;
    return cert;
}

}  // namespace epca
