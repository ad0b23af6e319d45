#ifndef EPCA_CSV_HPP
#define EPCA_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>

#include "epca/sampled_path.hpp"

namespace epca {

// Paths serialize as `t,v0,...,v{d-1}`, one row per grid node; profiles as
// `T,defect`.  Values print with 17 significant digits so doubles round-trip
// exactly and identical runs emit byte-identical files.

void write_path_csv(std::ostream& os, const SampledPath& path);
void write_profile_csv(std::ostream& os, const DefectProfile& profile);
void write_residuals_csv(std::ostream& os, std::span<const double> residuals);

// Re-reads a path table; the grid step is recovered from the time column and
// must divide 1.  Read-back paths are treated as piecewise smooth.
SampledPath read_path_csv(std::istream& is);

std::string format_double(double v);

}  // namespace epca

#endif
