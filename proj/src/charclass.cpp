#include "topospec/charclass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace topospec {

std::string to_string(ClassKind k) {
    switch (k) {
    case ClassKind::Euler2: return "euler2";
    case ClassKind::Chern1: return "chern1";
    case ClassKind::Pontrjagin1: return "pontrjagin1";
    }
    return "?";
}

void CycleSpec::validate(int chart_dim) const {
    if (axes.empty() || static_cast<int>(axes.size()) > chart_dim)
        throw InvalidParameter("cycle axes count out of range");
    for (size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] < 0 || axes[i] >= chart_dim)
            throw InvalidParameter("cycle axis out of range");
        for (size_t j = i + 1; j < axes.size(); ++j)
            if (axes[i] == axes[j])
                throw InvalidParameter("cycle axes must be distinct");
    }
    if (static_cast<int>(fixed_coords.size()) != chart_dim)
        throw InvalidParameter("fixed_coords size must equal chart dim");
    if (bounds.size() != axes.size())
        throw InvalidParameter("one bound interval per cycle axis required");
}

ClassDensity euler_density_2d(const MetricSpec& m, const DiffSpec& spec) {
    if (m.dim != 2)
        throw InvalidParameter("euler2 density is defined on 2D configurations");
    if (!m.riemannian())
        throw InvalidParameter("euler2 density needs a Riemannian metric");
    CoFrame cf = coframe_from_metric(m);
    SpinConnection sc = spin_connection(cf, spec);
    Curvature cv = curvature(sc, spec);
    ClassDensity d;
    d.kind = ClassKind::Euler2;
    d.cycle_dim = 2;
    d.form = PFormField(
        2, 2, [cv](std::span<const double> x, std::span<double> out) {
            double om = 0.0;
            cv.comps(x, std::span<double>(&om, 1));
            out[0] = om / (2.0 * std::numbers::pi);
        });
    return d;
}

ClassDensity chern1_density(const FieldStrength& fs, int chart_index) {
    if (chart_index < 0 || chart_index >= static_cast<int>(fs.F.size()))
        throw InvalidParameter("chart index out of range");
    ClassDensity d;
    d.kind = ClassKind::Chern1;
    d.cycle_dim = 2;
    d.form = scaled_form(fs.F[chart_index], 1.0 / (2.0 * std::numbers::pi));
    return d;
}

ClassDensity pontrjagin1_density(const Curvature& om) {
    const int dim = om.dim;
    if (dim < 4)
        throw DimensionTooLow("pontrjagin1 needs a chart of dim >= 4, got " +
                              std::to_string(dim));
    ClassDensity d;
    d.kind = ClassKind::Pontrjagin1;
    d.cycle_dim = 4;
    const int np = om.n_pairs();
    const int n2 = binomial(dim, 2);
    const int n4 = binomial(dim, 4);
    d.form = PFormField(
        dim, 4,
        [om, dim, np, n2, n4](std::span<const double> x, std::span<double> out) {
            std::array<double, kMaxComps * kMaxDim> all{};
            std::span<double> av(all.data(),
                                 static_cast<size_t>(np) * n2);
            om.comps(x, av);
            // sum_{a,b} Omega_ab ^ Omega_ba = -2 sum_{a<b} Omega_ab ^ Omega_ab
            std::array<double, kMaxComps> acc{}, term{};
            for (int pr = 0; pr < np; ++pr) {
                std::span<const double> w(all.data() + static_cast<size_t>(pr) * n2,
                                          static_cast<size_t>(n2));
                wedge(dim, 2, w, 2, w,
                      std::span<double>(term.data(), static_cast<size_t>(n4)));
                for (int i = 0; i < n4; ++i) acc[i] += term[i];
            }
            const double norm =
                2.0 / (8.0 * std::numbers::pi * std::numbers::pi);
            for (int i = 0; i < n4; ++i) out[i] = norm * acc[i];
        });
    return d;
}

IntegralResult integrate_class(const ClassDensity& d, const Chart& chart,
                               const QuadratureSpec& quad, int workers) {
    if (d.form.degree != chart.dim)
        throw InvalidParameter("density degree " + std::to_string(d.form.degree) +
                               " does not match chart dim " +
                               std::to_string(chart.dim));
    return integrate(d.form, chart, quad, workers);
}

IntegralResult integrate_class(const ClassDensity& d, const Chart& chart,
                               const CycleSpec& cycle, const QuadratureSpec& quad,
                               int workers) {
    cycle.validate(chart.dim);
    const int cdim = static_cast<int>(cycle.axes.size());
    if (d.form.degree != cdim)
        throw InvalidParameter("density degree does not match cycle dimension");

    // sorted axes pick the stored component; the given order fixes the sign
    std::vector<int> sorted_axes = cycle.axes;
    std::sort(sorted_axes.begin(), sorted_axes.end());
    int sign = 1;
    for (size_t i = 0; i < cycle.axes.size(); ++i)
        for (size_t j = i + 1; j < cycle.axes.size(); ++j)
            if (cycle.axes[i] > cycle.axes[j]) sign = -sign;
    const int comp_rank = IndexSets::rank(
        chart.dim, std::span<const int>(sorted_axes.data(), sorted_axes.size()));

    Point base{};
    for (int i = 0; i < chart.dim; ++i) base[i] = cycle.fixed_coords[i];

    const PFormField& big = d.form;
    const int chart_dim = chart.dim;
    auto axes = cycle.axes;
    const int n_comps = big.n_comps();
    PFormField pulled(
        cdim, cdim,
        [big, base, axes, chart_dim, comp_rank, sign, n_comps](
            std::span<const double> u, std::span<double> out) {
            Point x = base;
            for (size_t i = 0; i < axes.size(); ++i) x[axes[i]] = u[i];
            std::array<double, kMaxComps> comps{};
            big.eval(std::span<const double>(x.data(),
                                             static_cast<size_t>(chart_dim)),
                     std::span<double>(comps.data(),
                                       static_cast<size_t>(n_comps)));
            out[0] = sign * comps[comp_rank];
        });

    std::vector<Interval> box(cycle.bounds.begin(), cycle.bounds.end());
    Chart sub(cdim, box);
    if (chart.region) {
        sub.region = [region = chart.region, base, axes,
                      chart_dim](std::span<const double> u) {
            Point x = base;
            for (size_t i = 0; i < axes.size(); ++i) x[axes[i]] = u[i];
            return region(std::span<const double>(x.data(),
                                                  static_cast<size_t>(chart_dim)));
        };
    }
    return integrate(pulled, sub, quad, workers);
}

} // namespace topospec
