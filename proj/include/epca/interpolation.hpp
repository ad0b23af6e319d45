#ifndef EPCA_INTERPOLATION_HPP
#define EPCA_INTERPOLATION_HPP

#include <span>
#include <vector>

namespace epca {

class SampledPath;

// Gauss-Legendre rule mapped to the unit interval: sum_k w[k] * f(u[k])
// approximates the integral of f over [0, 1].  `points` panels of n points
// give composite order 2n, so the default quad_order 4 means 2-point panels.
struct GaussRule {
    std::span<const double> u;  // nodes in (0, 1)
    std::span<const double> w;  // weights, summing to 1
};
GaussRule gauss_rule(int points);
int points_for_order(int quad_order);

namespace detail {

// Lagrange weights for `count` equispaced nodes at integer offsets 0..count-1,
// evaluated at local coordinate x.
void lagrange_weights(int count, double x, std::span<double> w);

// A contiguous block of equispaced samples (node-major) that one smooth arc
// covers.  `last_override`, when set, replaces the final node's values - used
// for one-sided limits at the right endpoint of a unit interval.
struct SliceView {
    const double* data = nullptr;
    int count = 0;
    int dim = 0;
    const double* last_override = nullptr;

    const double* node(int j) const {
        if (last_override && j == count - 1) return last_override;
        return data + static_cast<size_t>(j) * dim;
    }
};

// Cubic (or lower, near short slices) interpolation at local position
// substep + frac, 0 < frac < 1.
void eval_slice(const SliceView& s, int substep, double frac, std::span<double> out);

// Kind-aware point evaluation between the nodes of a path; used by every
// quadrature loop.  Substep indices are global (0 .. node_count()-2).
class PathEvaluator {
public:
    explicit PathEvaluator(const SampledPath& p);
    void eval(int substep, double frac, std::span<double> out) const;

private:
    const SampledPath& path_;
};

}  // namespace detail
}  // namespace epca

#endif
