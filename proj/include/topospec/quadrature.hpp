#pragma once

#include <vector>

#include "topospec/chart.hpp"
#include "topospec/forms.hpp"

namespace topospec {

// Tensor-product Gauss-Legendre integration. Levels double the per-axis
// point count; the reported value comes from the finest level and the error
// estimate is |level_k - level_{k-1}|.
struct QuadratureSpec {
    int points_per_axis = 64;
    int refinement_levels = 3;
    double convergence_tol = 1e-8;

    void validate() const {
        if (points_per_axis < 2)
            throw InvalidParameter("points_per_axis must be >= 2");
        if (refinement_levels < 1)
            throw InvalidParameter("refinement_levels must be >= 1");
    }
};

struct IntegralResult {
    double value = 0.0;
    double err_estimate = 0.0;
    bool converged = true;
    long long nodes = 0; // nodes evaluated at the finest level
};

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Nodes/weights for n-point Gauss-Legendre on [-1,1]; cached, deterministic.
const GaussRule& gauss_legendre(int n);

// Worker cap from the TOPOSPEC_THREADS environment variable; absent or
// invalid means 1 (single-threaded).
int workers_from_env();

// Integral of a top-degree density over a chart.
//
// Summation order (the reproducibility contract): nodes are enumerated
// axis-major, lexicographic in (i0, i1, ..., i_{d-1}). Contributions are
// Kahan-accumulated per outermost-axis slab i0; slab partials are then
// Kahan-combined in increasing i0. The parallel kernel distributes slabs
// across threads but performs the identical per-slab sums and the identical
// final combine, so serial and parallel results are bit-identical.
//
// Points failing the chart's region predicate contribute 0. Throws
// EmptyDomain when a level has no passing node. A result whose err_estimate
// exceeds convergence_tol is returned with converged = false (not an error).
IntegralResult integrate(const PFormField& density, const Chart& chart,
                         const QuadratureSpec& spec, int max_workers = -1);

} // namespace topospec
