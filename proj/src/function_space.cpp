#include "epca/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epca/interpolation.hpp"

namespace epca {

namespace {

int aligned_shift(const SampledPath& path, double omega) {
    const int m = path.steps_per_unit();
    const double exact = omega * m;
    const double rounded = std::round(exact);
    if (omega <= 0.0 || rounded < 1.0 || std::abs(exact - rounded) > 1e-9)
        throw std::invalid_argument("omega must be a grid multiple");
    return static_cast<int>(rounded);
}

// Integral of |path|^p over every grid substep.
std::vector<double> substep_power_integrals(const SampledPath& path, double p, int quad_order) {
    const int n = path.node_count();
    const int d = path.dimension();
    const double h = path.step();
    std::vector<double> integrals(static_cast<size_t>(n) - 1);
    if (path.kind() == SegmentKind::step) {
        for (int j = 0; j + 1 < n; ++j)
            integrals[j] = h * std::pow(norm2(path.value(j)), p);
        return integrals;
    }
    const GaussRule rule = gauss_rule(points_for_order(quad_order));
    detail::PathEvaluator ev(path);
    std::vector<double> buf(d);
    for (int j = 0; j + 1 < n; ++j) {
        double acc = 0.0;
        for (size_t k = 0; k < rule.u.size(); ++k) {
            ev.eval(j, rule.u[k], buf);
            acc += rule.w[k] * std::pow(norm2(buf), p);
        }
        integrals[j] = h * acc;
    }
    return integrals;
}

// Max over window starts at grid nodes i >= start of the p-th root of the
// unit-window integral, reported for every start node (suffix maximum).
std::vector<double> window_suffix_max(const std::vector<double>& substep_integrals, int m,
                                      double p) {
    const int n_windows = static_cast<int>(substep_integrals.size()) - m + 1;
    std::vector<double> prefix(substep_integrals.size() + 1, 0.0);
    for (size_t j = 0; j < substep_integrals.size(); ++j)
        prefix[j + 1] = prefix[j] + substep_integrals[j];
    std::vector<double> out(n_windows);
    double best = 0.0;
    for (int i = n_windows - 1; i >= 0; --i) {
        const double w = std::max(prefix[i + m] - prefix[i], 0.0);
        best = std::max(best, w);
        out[i] = std::pow(best, 1.0 / p);
    }
    return out;
}

}  // namespace

double stepanov_norm(const SampledPath& path, double p, int quad_order) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    if (path.horizon() < 1) throw std::invalid_argument("horizon too short");
    const auto integrals = substep_power_integrals(path, p, quad_order);
    const int m = path.steps_per_unit();
    double best = 0.0;
    double window = 0.0;
    for (int j = 0; j < m; ++j) window += integrals[j];
    best = window;
    for (size_t j = m; j < integrals.size(); ++j) {
        window += integrals[j] - integrals[j - m];
        best = std::max(best, window);
    }
    return std::pow(std::max(best, 0.0), 1.0 / p);
}

DefectProfile sup_defect_profile(const SampledPath& path, double omega) {
    const int shift = aligned_shift(path, omega);
    const int n = path.node_count();
    if (n - 1 < shift + path.steps_per_unit())
        throw std::invalid_argument("horizon too short");
    const int count = n - shift;
    DefectProfile profile;
    profile.omega = omega;
    profile.T.resize(count);
    profile.defect.resize(count);
    double best = 0.0;
    for (int i = count - 1; i >= 0; --i) {
        best = std::max(best, distance2(path.value(i + shift), path.value(i)));
        profile.T[i] = path.time_at(i);
        profile.defect[i] = best;
    }
    return profile;
}

SampledPath shift_difference(const SampledPath& path, double omega) {
    const int shift = aligned_shift(path, omega);
    const int m = path.steps_per_unit();
    const int d = path.dimension();
    const int n = path.node_count();
    const int count = n - shift;
    if (count < m + 1) throw std::invalid_argument("horizon too short");
    // keep the difference on an integer horizon so the invariants hold
    const int usable = ((count - 1) / m) * m + 1;
    std::vector<double> vals(static_cast<size_t>(usable) * d);
    for (int i = 0; i < usable; ++i) {
        auto hi = path.value(i + shift);
        auto lo = path.value(i);
        for (int c = 0; c < d; ++c) vals[static_cast<size_t>(i) * d + c] = hi[c] - lo[c];
    }
    SegmentKind kind = path.kind();
    if (kind != SegmentKind::smooth && shift % m != 0) kind = SegmentKind::piecewise;
    SampledPath diff(m, d, std::move(vals), kind);
    if (path.has_left_values() && shift % m == 0) {
        const int w = shift / m;
        std::vector<double> lv(d);
        for (int t = 1; t <= diff.horizon(); ++t) {
            auto hi = path.left_value(t + w);
            auto lo = path.left_value(t);
            for (int c = 0; c < d; ++c) lv[c] = hi[c] - lo[c];
            diff.set_left_value(t, lv);
        }
    }
    return diff;
}

DefectProfile stepanov_defect_profile(const SampledPath& path, double omega, double p,
                                      int quad_order) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    const int shift = aligned_shift(path, omega);
    const int m = path.steps_per_unit();
    if (path.node_count() - 1 < shift + 2 * m)
        throw std::invalid_argument("horizon too short");
    const SampledPath diff = shift_difference(path, omega);
    const auto integrals = substep_power_integrals(diff, p, quad_order);
    const auto suffix = window_suffix_max(integrals, m, p);
    DefectProfile profile;
    profile.omega = omega;
    profile.p = p;
    profile.T.resize(suffix.size());
    for (size_t i = 0; i < suffix.size(); ++i) profile.T[i] = path.time_at(static_cast<int>(i));
    profile.defect = suffix;
    return profile;
}

SampledPath floor_compose(const SampledPath& path) {
    const int m = path.steps_per_unit();
    const int d = path.dimension();
    const int n = path.node_count();
    std::vector<double> vals(static_cast<size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        auto src = path.value((i / m) * m);
        std::copy(src.begin(), src.end(), vals.begin() + static_cast<size_t>(i) * d);
    }
    SampledPath out(m, d, std::move(vals), SegmentKind::step);
    for (int t = 1; t <= out.horizon(); ++t) {
        auto cur = path.value(t * m);
        auto prev = path.value((t - 1) * m);
        const double jump = distance2(cur, prev);
        const double scale = std::max(norm2(cur), norm2(prev));
        out.set_continuous(t, jump <= 1e-9 * (1.0 + scale));
    }
    return out;
}

SampledPath compose_nonlinearity(const Nonlinearity& f, const SampledPath& path, bool floored) {
    if (f.dimension() != path.dimension())
        throw std::invalid_argument("nonlinearity dimension mismatch");
    const int m = path.steps_per_unit();
    const int d = f.dimension();
    const int n = path.node_count();
    std::vector<double> vals(static_cast<size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        auto arg = floored ? path.value((i / m) * m) : path.value(i);
        f.eval(path.time_at(i), arg,
               std::span<double>(vals.data() + static_cast<size_t>(i) * d, d));
    }
    const SegmentKind kind = floored ? SegmentKind::piecewise : path.kind();
    SampledPath out(m, d, std::move(vals), kind);
    std::vector<double> lv(d);
    for (int t = 1; t <= out.horizon(); ++t) {
        // left limit at t uses the previous interval's frozen state argument
        auto arg = floored ? path.value((t - 1) * m) : path.left_value(t);
        f.eval(static_cast<double>(t), arg, lv);
        out.set_left_value(t, lv);
        auto cur = out.value(t * m);
        const double jump = distance2(cur, lv);
        const double scale = std::max(norm2(cur), norm2(lv));
        out.set_continuous(t, jump <= 1e-9 * (1.0 + scale));
    }
    return out;
}

}  // namespace epca
