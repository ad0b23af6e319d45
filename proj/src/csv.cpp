#include "epca/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace epca {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_path_csv(std::ostream& os, const SampledPath& path) {
    os << "t";
    for (int c = 0; c < path.dimension(); ++c) os << ",v" << c;
    os << "\n";
    for (int i = 0; i < path.node_count(); ++i) {
        os << format_double(path.time_at(i));
        for (double v : path.value(i)) os << "," << format_double(v);
        os << "\n";
    }
}

void write_profile_csv(std::ostream& os, const DefectProfile& profile) {
    os << "T,defect\n";
    for (size_t i = 0; i < profile.T.size(); ++i)
        os << format_double(profile.T[i]) << "," << format_double(profile.defect[i]) << "\n";
}

void write_residuals_csv(std::ostream& os, std::span<const double> residuals) {
    os << "iter,residual\n";
    for (size_t i = 0; i < residuals.size(); ++i)
        os << i << "," << format_double(residuals[i]) << "\n";
}

SampledPath read_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty path file");
    std::vector<double> times;
    std::vector<double> values;
    int dim = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> fields;
        while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
        if (fields.size() < 2) throw std::runtime_error("malformed path row: " + line);
        if (dim < 0)
            dim = static_cast<int>(fields.size()) - 1;
        else if (static_cast<int>(fields.size()) - 1 != dim)
            throw std::runtime_error("inconsistent column count in path file");
        times.push_back(fields[0]);
        values.insert(values.end(), fields.begin() + 1, fields.end());
    }
    if (times.size() < 2) throw std::runtime_error("path file needs at least two rows");
    const double h = times[1] - times[0];
    if (h <= 0.0) throw std::runtime_error("path times must increase");
    const double m_exact = 1.0 / h;
    const int m = static_cast<int>(std::round(m_exact));
    if (m < 2 || std::abs(m_exact - m) > 1e-6 * m)
        throw std::runtime_error("grid step must divide 1");
    for (size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - static_cast<double>(i) / m) > 1e-9)
            throw std::runtime_error("path grid is not uniform");
    return SampledPath(m, dim, std::move(values), SegmentKind::piecewise);
}

}  // namespace epca
