#ifndef EPCA_SAMPLED_PATH_HPP
#define EPCA_SAMPLED_PATH_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace epca {

// How a path behaves between samples. Quadrature and interpolation pick
// their stencils accordingly.
//   smooth    - one smooth arc over the whole horizon
//   piecewise - smooth on every unit interval [n, n+1), one-sided limits at
//               integer nodes (stored value = right limit)
//   step      - constant on every unit interval [n, n+1)
enum class SegmentKind { smooth, piecewise, step };

double norm2(std::span<const double> v);
double distance2(std::span<const double> a, std::span<const double> b);

// Vector-valued function on [0, T] sampled on the uniform grid t_i = i/m.
// The step divides 1 exactly, so integer times and unit-window boundaries
// are always grid nodes and floor(t) needs only index arithmetic.
class SampledPath {
public:
    SampledPath(int steps_per_unit, int dimension, std::vector<double> values,
                SegmentKind kind = SegmentKind::smooth);

    static SampledPath sample(const std::function<void(double, std::span<double>)>& fn,
                              int dimension, int steps_per_unit, int horizon,
                              SegmentKind kind = SegmentKind::smooth);
    static SampledPath sample_scalar(const std::function<double(double)>& fn,
                                     int steps_per_unit, int horizon,
                                     SegmentKind kind = SegmentKind::smooth);
    static SampledPath constant(std::span<const double> value, int steps_per_unit, int horizon);

    int dimension() const { return dim_; }
    int steps_per_unit() const { return m_; }
    double step() const { return 1.0 / m_; }
    int node_count() const { return static_cast<int>(values_.size()) / dim_; }
    int horizon() const { return (node_count() - 1) / m_; }  // integer T_max
    double start_time() const { return 0.0; }                // t0 is always 0
    double time_at(int node) const { return static_cast<double>(node) / m_; }

    std::span<const double> value(int node) const;
    std::span<double> value(int node);
    double scalar_value(int node) const;

    SegmentKind kind() const { return kind_; }
    void set_kind(SegmentKind k) { kind_ = k; }

    // Left limit at integer time n (meaningful for piecewise paths);
    // falls back to the stored (right) value when none was recorded.
    std::span<const double> left_value(int integer_time) const;
    void set_left_value(int integer_time, std::span<const double> v);
    bool has_left_values() const { return !left_values_.empty(); }

    // Per-integer-node continuity markers, index 0..horizon().
    bool continuous_at(int integer_time) const;
    void set_continuous(int integer_time, bool flag);

    // Interpolated point query (kind-aware).
    std::vector<double> value_at(double t) const;
    double scalar_at(double t) const;

    std::vector<double>& raw_values() { return values_; }
    const std::vector<double>& raw_values() const { return values_; }

private:
    int m_;
    int dim_;
    std::vector<double> values_;       // node-major, node_count() * dim_
    SegmentKind kind_;
    std::vector<double> left_values_;  // (horizon()+1) * dim_, lazily allocated
    std::vector<uint8_t> has_left_;
    std::vector<uint8_t> continuous_;  // defaults to all true
};

// Tail profile T -> defect, the finite-horizon surrogate for
// "f(t + omega) - f(t) -> 0".  Built as a suffix supremum, hence
// non-increasing in T by construction.
struct DefectProfile {
    double omega = 0.0;
    std::optional<double> p;        // Stepanov exponent; absent for sup-defects
    std::vector<double> T;          // strictly increasing grid times
    std::vector<double> defect;

    double final_value() const { return defect.empty() ? 0.0 : defect.back(); }
    // Decay surrogate: final value below tol and non-increasing over the
    // last half of the profile (a finite horizon cannot certify a limit).
    bool decays(double tol) const;
};

}  // namespace epca

#endif
