#include "topospec/deriv.hpp"

#include <array>
#include <string>

namespace topospec {

namespace {

double effective_step(const DiffSpec& spec, std::span<const double> x, int axis,
                      const SafeDistFn& safe_dist) {
    double h = spec.step(x[axis]);
    if (safe_dist) {
        const double d = safe_dist(x);
        // keep the widest stencil point (x +/- 2h) strictly inside
        h = std::min(h, 0.4 * d);
        if (!(h > 1e-12))
            throw DegenerateMetric(
                "derivative stencil collapsed: evaluation point too close to a "
                "degeneracy (safe distance " + std::to_string(d) + ")");
    }
    return h;
}

} // namespace

void partial_derivative_array(const ArrayField& f, int n_comps,
                              std::span<const double> x, int axis,
                              const DiffSpec& spec, const SafeDistFn& safe_dist,
                              std::span<double> out) {
    if (axis < 0 || axis >= static_cast<int>(x.size()))
        throw InvalidParameter("derivative axis out of range");
    const double h = effective_step(spec, x, axis, safe_dist);

    std::array<double, kMaxDim> p{};
    for (size_t i = 0; i < x.size(); ++i) p[i] = x[i];
    std::span<const double> pv(p.data(), x.size());

    auto eval = [&](double coord, std::span<double> dst) {
        p[axis] = coord;
        f(pv, dst);
        if (!is_finite(dst))
            throw NonFiniteEvaluation("field non-finite at stencil point, axis " +
                                      std::to_string(axis));
    };

    std::array<double, kMaxComps> fp{}, fm{};
    std::span<double> fps(fp.data(), static_cast<size_t>(n_comps));
    std::span<double> fms(fm.data(), static_cast<size_t>(n_comps));

    if (spec.order == 4) {
        std::array<double, kMaxComps> fp2{}, fm2{};
        std::span<double> fp2s(fp2.data(), static_cast<size_t>(n_comps));
        std::span<double> fm2s(fm2.data(), static_cast<size_t>(n_comps));
        eval(x[axis] + h, fps);
        eval(x[axis] - h, fms);
        eval(x[axis] + 2.0 * h, fp2s);
        eval(x[axis] - 2.0 * h, fm2s);
        for (int i = 0; i < n_comps; ++i)
            out[i] = (-fp2[i] + 8.0 * fp[i] - 8.0 * fm[i] + fm2[i]) / (12.0 * h);
    } else if (spec.order == 2) {
        eval(x[axis] + h, fps);
        eval(x[axis] - h, fms);
        for (int i = 0; i < n_comps; ++i)
            out[i] = (fp[i] - fm[i]) / (2.0 * h);
    } else {
        throw InvalidParameter("finite-difference order must be 2 or 4");
    }
}

double partial_derivative(const ScalarField& f, std::span<const double> x,
                          int axis, const DiffSpec& spec,
                          const SafeDistFn& safe_dist) {
    double out = 0.0;
    ArrayField wrap = [&f](std::span<const double> p, std::span<double> dst) {
        dst[0] = f(p);
    };
    partial_derivative_array(wrap, 1, x, axis, spec, safe_dist,
                             std::span<double>(&out, 1));
    return out;
}

} // namespace topospec
