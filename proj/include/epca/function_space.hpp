#ifndef EPCA_FUNCTION_SPACE_HPP
#define EPCA_FUNCTION_SPACE_HPP

#include "epca/nonlinearity.hpp"
#include "epca/sampled_path.hpp"

namespace epca {

/*
 * Quantities on moving unit windows [t, t+1]:
 *
 *   Stepanov norm     sup_t ( int_t^{t+1} |f(s)|^p ds )^{1/p}
 *   sup defect        sup_{t >= T} |f(t + omega) - f(t)|
 *   Stepanov defect   sup_{t >= T} ( int_t^{t+1} |f(s+omega) - f(s)|^p ds )^{1/p}
 *
 * Window starts range over grid nodes; window integrals use Gauss-Legendre
 * panels per grid substep (2 points at the default composite order 4) with
 * cubic interpolation between samples, stencils never crossing a unit-interval
 * breakpoint.  Step paths integrate exactly.
 */

double stepanov_norm(const SampledPath& path, double p, int quad_order = 4);

DefectProfile sup_defect_profile(const SampledPath& path, double omega);

DefectProfile stepanov_defect_profile(const SampledPath& path, double omega, double p,
                                      int quad_order = 4);

// The step path t -> path([t]).  Exact index arithmetic; integer nodes where
// the input moved by more than round-off get flagged discontinuous.
SampledPath floor_compose(const SampledPath& path);

// v(t) = f(t, u([t])) when floored, else f(t, u(t)); one-sided limits at
// integer nodes are recorded so downstream quadrature stays panelwise smooth.
SampledPath compose_nonlinearity(const Nonlinearity& f, const SampledPath& path, bool floored);

// Difference path s -> path(s + omega) - path(s) on [0, T - omega];
// the building block of both defect profiles.
SampledPath shift_difference(const SampledPath& path, double omega);

}  // namespace epca

#endif
