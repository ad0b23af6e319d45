#include "epca/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "epca/sampled_path.hpp"

namespace epca {

namespace {

// Nodes/weights on [-1, 1], remapped below.
constexpr std::array<double, 1> gl1_x{0.0};
constexpr std::array<double, 1> gl1_w{2.0};
constexpr std::array<double, 2> gl2_x{-0.5773502691896257645091488, 0.5773502691896257645091488};
constexpr std::array<double, 2> gl2_w{1.0, 1.0};
constexpr std::array<double, 3> gl3_x{-0.7745966692414833770358531, 0.0,
                                      0.7745966692414833770358531};
constexpr std::array<double, 3> gl3_w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
constexpr std::array<double, 4> gl4_x{-0.8611363115940525752239465, -0.3399810435848562648026658,
                                      0.3399810435848562648026658, 0.8611363115940525752239465};
constexpr std::array<double, 4> gl4_w{0.3478548451374538573730639, 0.6521451548625461426269461,
                                      0.6521451548625461426269461, 0.3478548451374538573730639};
constexpr std::array<double, 5> gl5_x{-0.9061798459386639927976269, -0.5384693101056830910363144,
                                      0.0, 0.5384693101056830910363144,
                                      0.9061798459386639927976269};
constexpr std::array<double, 5> gl5_w{0.2369268850561890875142640, 0.4786286704993664680412915,
                                      0.5688888888888888888888889, 0.4786286704993664680412915,
                                      0.2369268850561890875142640};

struct UnitRule {
    std::vector<double> u, w;
};

UnitRule make_unit_rule(std::span<const double> x, std::span<const double> w) {
    UnitRule r;
    for (size_t k = 0; k < x.size(); ++k) {
        r.u.push_back(0.5 * (1.0 + x[k]));
        r.w.push_back(0.5 * w[k]);
    }
    return r;
}

const UnitRule& unit_rule(int points) {
    static const UnitRule r1 = make_unit_rule(gl1_x, gl1_w);
    static const UnitRule r2 = make_unit_rule(gl2_x, gl2_w);
    static const UnitRule r3 = make_unit_rule(gl3_x, gl3_w);
    static const UnitRule r4 = make_unit_rule(gl4_x, gl4_w);
    static const UnitRule r5 = make_unit_rule(gl5_x, gl5_w);
    switch (points) {
        case 1: return r1;
        case 2: return r2;
        case 3: return r3;
        case 4: return r4;
        case 5: return r5;
        default: throw std::invalid_argument("Gauss rule supports 1..5 points per panel");
    }
}

}  // namespace

GaussRule gauss_rule(int points) {
    const UnitRule& r = unit_rule(points);
    return {std::span<const double>(r.u), std::span<const double>(r.w)};
}

int points_for_order(int quad_order) {
    if (quad_order < 2 || quad_order > 10 || quad_order % 2 != 0)
        throw std::invalid_argument("quad_order must be an even value in [2, 10]");
    return quad_order / 2;
}

namespace detail {

void lagrange_weights(int count, double x, std::span<double> w) {
    for (int k = 0; k < count; ++k) {
        double num = 1.0, den = 1.0;
        for (int l = 0; l < count; ++l) {
            if (l == k) continue;
            num *= x - l;
            den *= static_cast<double>(k - l);
        }
        w[k] = num / den;
    }
}

void eval_slice(const SliceView& s, int substep, double frac, std::span<double> out) {
    const int K = std::min(4, s.count);
    const int base = std::clamp(substep - 1, 0, s.count - K);
    double wbuf[4];
    lagrange_weights(K, (substep - base) + frac, std::span<double>(wbuf, K));
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = 0; k < K; ++k) {
        const double* v = s.node(base + k);
        for (int c = 0; c < s.dim; ++c) out[c] += wbuf[k] * v[c];
    }
}

PathEvaluator::PathEvaluator(const SampledPath& p) : path_(p) {}

void PathEvaluator::eval(int substep, double frac, std::span<double> out) const {
    const int d = path_.dimension();
    const int m = path_.steps_per_unit();
    const double* data = path_.raw_values().data();
    switch (path_.kind()) {
        case SegmentKind::step: {
            // constant on the containing unit interval
            auto v = path_.value(substep);
            std::copy(v.begin(), v.end(), out.begin());
            return;
        }
        case SegmentKind::smooth: {
            SliceView s{data, path_.node_count(), d, nullptr};
            eval_slice(s, substep, frac, out);
            return;
        }
        case SegmentKind::piecewise: {
            const int unit = substep / m;
            SliceView s{data + static_cast<size_t>(unit) * m * d, m + 1, d, nullptr};
            if (path_.has_left_values()) {
                auto lv = path_.left_value(unit + 1);
                s.last_override = lv.data();
            }
            eval_slice(s, substep - unit * m, frac, out);
            return;
        }
    }
}

}  // namespace detail
}  // namespace epca
