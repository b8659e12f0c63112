#include "topospec/gauge.hpp"

#include <cmath>

namespace topospec {

FieldStrength field_strength(const GaugeConnection& conn) {
    conn.validate();
    FieldStrength fs;
    fs.charts = conn.charts;
    for (const auto& a : conn.A)
        fs.F.push_back(exterior_derivative_field(a, conn.diff));
    return fs;
}

TransitionReport verify_transition(const GaugeConnection& conn, int samples) {
    conn.validate();
    if (conn.charts.size() < 2 || !conn.overlap || !conn.transition)
        throw MissingTransition(
            "two charts with overlap and transition are required");
    if (samples < 1) throw InvalidParameter("samples must be >= 1");

    const Chart& ov = *conn.overlap;
    const int dim = ov.dim;
    PFormField lambda0 = scalar_as_0form(dim, conn.transition);

    // uniform grid, ~samples^(1/dim) points per axis, strictly interior
    int per_axis = 1;
    while (std::pow(per_axis + 1, dim) <= samples) ++per_axis;

    TransitionReport rep;
    std::array<int, kMaxDim> idx{};
    const long long total = static_cast<long long>(std::pow(per_axis, dim));
    std::array<double, kMaxDim> an{}, as{}, dl{};
    std::span<double> anv(an.data(), static_cast<size_t>(dim));
    std::span<double> asv(as.data(), static_cast<size_t>(dim));
    std::span<double> dlv(dl.data(), static_cast<size_t>(dim));
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        Point x{};
        for (int a = 0; a < dim; ++a) {
            idx[a] = static_cast<int>(rem % per_axis);
            rem /= per_axis;
            const double t = (idx[a] + 0.5) / per_axis;
            x[a] = ov.bounds[a].lo + t * ov.bounds[a].length();
        }
        std::span<const double> xv(x.data(), static_cast<size_t>(dim));
        if (!ov.in_region(xv)) continue;
        conn.A[0].eval(xv, anv);
        conn.A[1].eval(xv, asv);
        exterior_derivative(lambda0, xv, dlv, conn.diff);
        for (int mu = 0; mu < dim; ++mu) {
            const double r = std::fabs((an[mu] - as[mu]) - dl[mu]);
            rep.max_residual = std::max(rep.max_residual, r);
        }
        ++rep.samples;
    }
    rep.pass = rep.samples > 0 && rep.max_residual < 1e-8;
    return rep;
}

} // namespace topospec
