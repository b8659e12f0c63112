#include "topospec/metric.hpp"

#include <cmath>
#include <string>

namespace topospec {

namespace {

constexpr double kDegeneracyTol = 1e-12;

void fill_signature(MetricSpec& m, std::span<const int> sig) {
    if (sig.empty()) {
        for (int i = 0; i < m.dim; ++i) m.signature[i] = 1;
        return;
    }
    if (static_cast<int>(sig.size()) != m.dim)
        throw InvalidParameter("signature size != dim");
    for (int i = 0; i < m.dim; ++i) {
        if (sig[i] != 1 && sig[i] != -1)
            throw InvalidParameter("signature entries must be +1 or -1");
        m.signature[i] = sig[i];
    }
}

} // namespace

MetricSpec MetricSpec::make_diagonal(int dim, DiagonalFn fn,
                                     std::span<const int> sig) {
    MetricSpec m;
    m.kind = MetricKind::Diagonal;
    m.dim = dim;
    m.diagonal = std::move(fn);
    fill_signature(m, sig);
    return m;
}

MetricSpec MetricSpec::make_conformal(int dim, ConformalFn fn) {
    MetricSpec m;
    m.kind = MetricKind::ConformallyFlat;
    m.dim = dim;
    m.conformal = std::move(fn);
    fill_signature(m, {});
    return m;
}

MetricSpec MetricSpec::make_general(int dim, MatrixFn fn,
                                    std::span<const int> sig) {
    MetricSpec m;
    m.kind = MetricKind::GeneralSymmetric;
    m.dim = dim;
    m.full = std::move(fn);
    fill_signature(m, sig);
    return m;
}

SmallMatrix MetricSpec::eval(std::span<const double> x) const {
    SmallMatrix g(dim);
    switch (kind) {
    case MetricKind::Diagonal: {
        std::array<double, kMaxDim> d{};
        diagonal(x, std::span<double>(d.data(), static_cast<size_t>(dim)));
        for (int i = 0; i < dim; ++i) {
            if (!std::isfinite(d[i]))
                throw NonFiniteEvaluation("diagonal metric entry non-finite");
            if (std::fabs(d[i]) < kDegeneracyTol)
                throw DegenerateMetric("diagonal metric entry ~0 on axis " +
                                       std::to_string(i));
            if ((d[i] > 0) != (signature[i] > 0))
                throw DegenerateMetric("diagonal metric entry sign clashes with "
                                       "declared signature on axis " +
                                       std::to_string(i));
            g(i, i) = d[i];
        }
        break;
    }
    case MetricKind::ConformallyFlat: {
        const double phi = conformal(x);
        if (!std::isfinite(phi))
            throw NonFiniteEvaluation("conformal factor non-finite");
        if (phi < kDegeneracyTol)
            throw DegenerateMetric("conformal factor " + std::to_string(phi) +
                                   " not positive");
        for (int i = 0; i < dim; ++i) g(i, i) = phi;
        break;
    }
    case MetricKind::GeneralSymmetric: {
        full(x, g);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (!std::isfinite(g(i, j)))
                    throw NonFiniteEvaluation("metric component non-finite");
                if (std::fabs(g(i, j) - g(j, i)) >
                    1e-9 * (1.0 + std::fabs(g(i, j))))
                    throw DegenerateMetric("metric matrix not symmetric");
            }
        break;
    }
    }
    return g;
}

double MetricSpec::det(std::span<const double> x) const {
    return determinant(eval(x));
}

} // namespace topospec
