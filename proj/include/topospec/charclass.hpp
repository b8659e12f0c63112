#pragma once

#include <string>
#include <vector>

#include "topospec/frame.hpp"
#include "topospec/gauge.hpp"
#include "topospec/metric.hpp"
#include "topospec/quadrature.hpp"

namespace topospec {

enum class ClassKind { Euler2, Chern1, Pontrjagin1 };

std::string to_string(ClassKind k);

// Top-degree-on-its-cycle characteristic-class density, normalized so that
// closed-cycle integrals are integers: e = Omega_{12}/2pi, c1 = F/2pi,
// p1 = -tr(Omega ^ Omega)/8pi^2.
struct ClassDensity {
    ClassKind kind = ClassKind::Euler2;
    int cycle_dim = 2;
    PFormField form;
};

// A coordinate-aligned cycle inside a chart: ordered axes spanning it (the
// order fixes its orientation), fixed values for the remaining coordinates,
// and per-axis bounds.
struct CycleSpec {
    std::vector<int> axes;
    std::vector<double> fixed_coords; // size = chart.dim, entries on `axes` ignored
    std::vector<Interval> bounds;     // one per cycle axis

    void validate(int chart_dim) const;
};

// (1/2pi) Omega_{12} of a 2D Riemannian metric as a coordinate 2-form,
// equal to (K/2pi) sqrt(det g) dq^1 ^ dq^2. Orientation follows the
// positive-round-sphere convention of the frame module.
ClassDensity euler_density_2d(const MetricSpec& m,
                              const DiffSpec& spec = DiffSpec::order4());

// F/2pi on the first chart of the field strength (U(1), real convention).
ClassDensity chern1_density(const FieldStrength& fs, int chart_index = 0);

// -(1/8pi^2) sum_{a,b} Omega_{ab} ^ Omega_{ba} as a coordinate 4-form.
// Throws DimensionTooLow below dim 4.
ClassDensity pontrjagin1_density(const Curvature& om);

// Integral of the density over a full chart or over a cycle within it.
IntegralResult integrate_class(const ClassDensity& d, const Chart& chart,
                               const QuadratureSpec& quad, int workers = -1);
IntegralResult integrate_class(const ClassDensity& d, const Chart& chart,
                               const CycleSpec& cycle, const QuadratureSpec& quad,
                               int workers = -1);

} // namespace topospec
