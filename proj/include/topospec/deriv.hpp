#pragma once

#include <cmath>
#include <functional>
#include <span>

#include "topospec/errors.hpp"
#include "topospec/forms.hpp"

namespace topospec {

// Distance from a point within which a field stays evaluable (positive side
// of a degeneracy wall, coordinate pole, ...). Stencils shrink to stay inside.
using SafeDistFn = std::function<double(std::span<const double>)>;

// Central finite-difference policy. The step is
//   h = max(rel_step * |x_axis|, abs_floor)
// clamped to 0.4 * safe_dist(x) when a safe-distance function is given, so
// that nested stencil trees never cross a degeneracy.
//
// The order-2 policy (1e-5) is tuned for single differentiation of O(1)
// fields. The order-4 policy uses a larger step: it is applied twice in the
// frame chain (coframe -> connection -> curvature), where rounding noise of
// the inner derivative is amplified by 1/h of the outer one.
struct DiffSpec {
    int order = 2; // 2 or 4
    double rel_step = 1e-5;
    double abs_floor = 1e-5;

    static DiffSpec order2() { return DiffSpec{2, 1e-5, 1e-5}; }
    static DiffSpec order4() { return DiffSpec{4, 1e-3, 1e-3}; }
    // For fields with 1/r-type behaviour the step must scale down with the
    // coordinate; used by the black-hole gauge connections.
    static DiffSpec order4_scaled() { return DiffSpec{4, 1e-3, 1e-4}; }

    double step(double coord) const {
        return std::max(rel_step * std::fabs(coord), abs_floor);
    }
};

// d/dx_axis of a scalar field at x. Throws NonFiniteEvaluation if the field
// returns a non-finite value at any stencil point.
double partial_derivative(const ScalarField& f, std::span<const double> x,
                          int axis, const DiffSpec& spec = DiffSpec::order2(),
                          const SafeDistFn& safe_dist = {});

// Vector-valued variant: differentiates all n_comps components of an array
// field in one stencil sweep (2 or 4 evaluations total).
void partial_derivative_array(const ArrayField& f, int n_comps,
                              std::span<const double> x, int axis,
                              const DiffSpec& spec, const SafeDistFn& safe_dist,
                              std::span<double> out);

} // namespace topospec
