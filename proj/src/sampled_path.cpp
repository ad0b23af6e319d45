#include "epca/sampled_path.hpp"

#include <algorithm>
#include <stdexcept>

#include "epca/interpolation.hpp"

namespace epca {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double distance2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

SampledPath::SampledPath(int steps_per_unit, int dimension, std::vector<double> values,
                         SegmentKind kind)
    : m_(steps_per_unit), dim_(dimension), values_(std::move(values)), kind_(kind) {
    if (m_ < 2) throw std::invalid_argument("grid step must be 1/m with m >= 2");
    if (dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
    if (values_.empty() || values_.size() % dim_ != 0)
        throw std::invalid_argument("value buffer size must be a multiple of the dimension");
    const int n = static_cast<int>(values_.size()) / dim_;
    if (n < 2 || (n - 1) % m_ != 0)
        throw std::invalid_argument("node count must cover an integer horizon (len = T*m + 1)");
    continuous_.assign(static_cast<size_t>(horizon()) + 1, 1);
}

SampledPath SampledPath::sample(const std::function<void(double, std::span<double>)>& fn,
                                int dimension, int steps_per_unit, int horizon,
                                SegmentKind kind) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    const int n = horizon * steps_per_unit + 1;
    std::vector<double> vals(static_cast<size_t>(n) * dimension);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / steps_per_unit;
        fn(t, std::span<double>(vals.data() + static_cast<size_t>(i) * dimension, dimension));
    }
    return SampledPath(steps_per_unit, dimension, std::move(vals), kind);
}

SampledPath SampledPath::sample_scalar(const std::function<double(double)>& fn,
                                       int steps_per_unit, int horizon, SegmentKind kind) {
    return sample([&fn](double t, std::span<double> out) { out[0] = fn(t); }, 1,
                  steps_per_unit, horizon, kind);
}

SampledPath SampledPath::constant(std::span<const double> value, int steps_per_unit, int horizon) {
    const int n = horizon * steps_per_unit + 1;
    const int d = static_cast<int>(value.size());
    std::vector<double> vals(static_cast<size_t>(n) * d);
    for (int i = 0; i < n; ++i)
        std::copy(value.begin(), value.end(), vals.begin() + static_cast<size_t>(i) * d);
    return SampledPath(steps_per_unit, d, std::move(vals));
}

std::span<const double> SampledPath::value(int node) const {
    return {values_.data() + static_cast<size_t>(node) * dim_, static_cast<size_t>(dim_)};
}

std::span<double> SampledPath::value(int node) {
    return {values_.data() + static_cast<size_t>(node) * dim_, static_cast<size_t>(dim_)};
}

double SampledPath::scalar_value(int node) const { return values_[static_cast<size_t>(node) * dim_]; }

std::span<const double> SampledPath::left_value(int integer_time) const {
    if (!left_values_.empty() && has_left_[integer_time])
        return {left_values_.data() + static_cast<size_t>(integer_time) * dim_,
                static_cast<size_t>(dim_)};
    return value(integer_time * m_);
}

void SampledPath::set_left_value(int integer_time, std::span<const double> v) {
    if (left_values_.empty()) {
        left_values_.assign((static_cast<size_t>(horizon()) + 1) * dim_, 0.0);
        has_left_.assign(static_cast<size_t>(horizon()) + 1, 0);
    }
    std::copy(v.begin(), v.end(), left_values_.begin() + static_cast<size_t>(integer_time) * dim_);
    has_left_[integer_time] = 1;
}

bool SampledPath::continuous_at(int integer_time) const { return continuous_[integer_time] != 0; }

void SampledPath::set_continuous(int integer_time, bool flag) {
    continuous_[integer_time] = flag ? 1 : 0;
}

std::vector<double> SampledPath::value_at(double t) const {
    const int n = node_count();
    if (t < -1e-12 || t > time_at(n - 1) + 1e-12)
        throw std::invalid_argument("query time outside the sampled horizon");
    std::vector<double> out(dim_);
    if (kind_ == SegmentKind::step) {
        int unit = static_cast<int>(std::floor(t + 1e-12));
        unit = std::clamp(unit, 0, horizon());
        const int node = std::min(unit * m_, n - 1);
        auto v = value(node);
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    }
    const double x = t * m_;
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) {
        auto v = value(std::clamp(static_cast<int>(r), 0, n - 1));
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    }
    const int sub = std::clamp(static_cast<int>(std::floor(x)), 0, n - 2);
    detail::PathEvaluator ev(*this);
    ev.eval(sub, x - sub, out);
    return out;
}

double SampledPath::scalar_at(double t) const { return value_at(t)[0]; }

bool DefectProfile::decays(double tol) const {
    if (defect.empty()) return false;
    if (!(defect.back() < tol)) return false;
    const size_t half = defect.size() / 2;
    for (size_t i = half; i + 1 < defect.size(); ++i)
        if (defect[i + 1] > defect[i] + 1e-12 * (1.0 + defect[i])) return false;
    return true;
}

}  // namespace epca
