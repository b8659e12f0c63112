#include "topospec/exterior.hpp"

#include <array>

namespace topospec {

void exterior_derivative(const PFormField& w, std::span<const double> x,
                         std::span<double> out, const DiffSpec& spec,
                         const SafeDistFn& safe_dist) {
    const int dim = w.dim;
    const int p = w.degree;
    if (p >= dim)
        throw DegreeOverflow("exterior derivative of a top-degree form");
    const int n_in = binomial(dim, p);
    const int n_out = binomial(dim, p + 1);

    // One stencil sweep per axis differentiates every component at once.
    std::array<std::array<double, kMaxComps>, kMaxDim> deriv{};
    for (int axis = 0; axis < dim; ++axis)
        partial_derivative_array(w.components, n_in, x, axis, spec, safe_dist,
                                 std::span<double>(deriv[axis].data(),
                                                   static_cast<size_t>(n_in)));

    for (int r = 0; r < n_out; ++r) {
        auto J = IndexSets::combo(dim, p + 1, r);
        double acc = 0.0;
        std::array<int, kMaxDim> sub{};
        for (int k = 0; k <= p; ++k) {
            int t = 0;
            for (int i = 0; i <= p; ++i)
                if (i != k) sub[t++] = J[i];
            const int rank_sub =
                IndexSets::rank(dim, std::span<const int>(sub.data(),
                                                          static_cast<size_t>(p)));
            const double term = deriv[J[k]][rank_sub];
            acc += (k % 2 == 0) ? term : -term;
        }
        out[r] = acc;
    }
}

PFormField exterior_derivative_field(const PFormField& w, const DiffSpec& spec,
                                     const SafeDistFn& safe_dist) {
    return PFormField(
        w.dim, w.degree + 1,
        [w, spec, safe_dist](std::span<const double> x, std::span<double> out) {
            exterior_derivative(w, x, out, spec, safe_dist);
        });
}

void wedge(int dim, int p, std::span<const double> u, int q,
           std::span<const double> v, std::span<double> out) {
    if (p + q > dim)
        throw DegreeOverflow("wedge degree " + std::to_string(p) + "+" +
                             std::to_string(q) + " exceeds dim " +
                             std::to_string(dim));
    const int n_out = binomial(dim, p + q);
    const int k = p + q;
    auto splits = IndexSets::combos(k, p); // positions of u-indices within K
    const int n_splits = binomial(k, p);

    for (int r = 0; r < n_out; ++r) {
        auto K = IndexSets::combo(dim, k, r);
        double acc = 0.0;
        std::array<int, kMaxDim> I{}, J{};
        for (int s = 0; s < n_splits; ++s) {
            std::span<const int> pos(splits.data() + static_cast<size_t>(s) * p,
                                     static_cast<size_t>(p));
            int transpositions = 0;
            int pi = 0, qi = 0;
            for (int t = 0; t < k; ++t) {
                if (pi < p && pos[pi] == t) {
                    I[pi] = K[t];
                    transpositions += t - pi;
                    ++pi;
                } else {
                    J[qi++] = K[t];
                }
            }
            const int sign = (transpositions % 2 == 0) ? 1 : -1;
            const double ui =
                u[IndexSets::rank(dim, std::span<const int>(I.data(),
                                                            static_cast<size_t>(p)))];
            const double vj =
                v[IndexSets::rank(dim, std::span<const int>(J.data(),
                                                            static_cast<size_t>(q)))];
            acc += sign * ui * vj;
        }
        out[r] = acc;
    }
}

} // namespace topospec
