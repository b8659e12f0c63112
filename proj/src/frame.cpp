#include "topospec/frame.hpp"

#include <cmath>
#include <string>

namespace topospec {

namespace {

constexpr double kDegeneracyTol = 1e-12;

// pair rank for a<b within dim, lexicographic over IndexSets(dim,2)
inline int pair_rank(int dim, int a, int b) {
    std::array<int, 2> c{a, b};
    return IndexSets::rank(dim, std::span<const int>(c.data(), 2));
}

// omega_{ab,mu} with sign for arbitrary (a,b) from the a<b storage
inline double leg(std::span<const double> w, int dim, int a, int b, int mu) {
    if (a == b) return 0.0;
    if (a < b) return w[static_cast<size_t>(pair_rank(dim, a, b)) * dim + mu];
    return -w[static_cast<size_t>(pair_rank(dim, b, a)) * dim + mu];
}

SmallMatrix triangular_coframe(const SmallMatrix& g,
                               std::span<const int> signature) {
    const int n = g.n;
    SmallMatrix e(n);
    for (int a = 0; a < n; ++a) {
        double s = g(a, a);
        for (int b = 0; b < a; ++b) s -= signature[b] * e(b, a) * e(b, a);
        if (std::fabs(s) < kDegeneracyTol)
            throw DegenerateMetric("triangular decomposition pivot ~0 at frame "
                                   "index " + std::to_string(a));
        if ((s > 0) != (signature[a] > 0))
            throw DegenerateMetric("metric does not have the declared signature "
                                   "(pivot sign mismatch at index " +
                                   std::to_string(a) + ")");
        e(a, a) = std::sqrt(std::fabs(s));
        for (int mu = a + 1; mu < n; ++mu) {
            double v = g(a, mu);
            for (int b = 0; b < a; ++b) v -= signature[b] * e(b, a) * e(b, mu);
            e(a, mu) = v / (signature[a] * e(a, a));
        }
    }
    return e;
}

} // namespace

CoFrame coframe_from_metric(const MetricSpec& m) {
    CoFrame cf;
    cf.dim = m.dim;
    cf.signature = m.signature;
    cf.safe_dist = m.safe_dist;
    switch (m.kind) {
    case MetricKind::Diagonal:
        cf.e = [m](std::span<const double> x, SmallMatrix& out) {
            SmallMatrix g = m.eval(x);
            out = SmallMatrix(m.dim);
            for (int i = 0; i < m.dim; ++i) out(i, i) = std::sqrt(std::fabs(g(i, i)));
        };
        break;
    case MetricKind::ConformallyFlat:
        cf.e = [m](std::span<const double> x, SmallMatrix& out) {
            SmallMatrix g = m.eval(x);
            out = SmallMatrix(m.dim);
            const double r = std::sqrt(g(0, 0));
            for (int i = 0; i < m.dim; ++i) out(i, i) = r;
        };
        break;
    case MetricKind::GeneralSymmetric:
        cf.e = [m](std::span<const double> x, SmallMatrix& out) {
            SmallMatrix g = m.eval(x);
            out = triangular_coframe(
                g, std::span<const int>(m.signature.data(),
                                        static_cast<size_t>(m.dim)));
        };
        break;
    }
    return cf;
}

SpinConnection spin_connection(const CoFrame& cf, const DiffSpec& spec) {
    SpinConnection sc;
    sc.dim = cf.dim;
    sc.signature = cf.signature;
    sc.safe_dist = cf.safe_dist;
    const int dim = cf.dim;

    // Frame rows as one array field so each axis needs a single stencil sweep.
    ArrayField frame_flat = [cf, dim](std::span<const double> x,
                                      std::span<double> out) {
        SmallMatrix e(dim);
        cf.eval(x, e);
        for (int a = 0; a < dim; ++a)
            for (int mu = 0; mu < dim; ++mu)
                out[static_cast<size_t>(a) * dim + mu] = e(a, mu);
    };

    sc.legs = [cf, frame_flat, spec, dim](std::span<const double> x,
                                          std::span<double> out) {
        SmallMatrix e(dim);
        cf.eval(x, e);
        if (!is_finite(std::span<const double>(e.a.data(),
                                               static_cast<size_t>(dim) * dim)))
            throw NonFiniteEvaluation("coframe non-finite");
        SmallMatrix Einv = inverse(e);

        // de[nu](a,mu) = d_nu e^a_mu
        std::array<std::array<double, kMaxDim * kMaxDim>, kMaxDim> de{};
        for (int nu = 0; nu < dim; ++nu)
            partial_derivative_array(
                frame_flat, dim * dim, x, nu, spec, cf.safe_dist,
                std::span<double>(de[nu].data(), static_cast<size_t>(dim) * dim));

        // D^a_{bc} = E^nu_b E^mu_c d_nu e^a_mu ; C^a_{bc} = D^a_{cb} - D^a_{bc}
        std::array<double, kMaxDim * kMaxDim * kMaxDim> D{};
        auto Dat = [&](int a, int b, int c) -> double& {
            return D[(static_cast<size_t>(a) * dim + b) * dim + c];
        };
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int c = 0; c < dim; ++c) {
                    double s = 0.0;
                    for (int nu = 0; nu < dim; ++nu) {
                        const double Enb = Einv(nu, b);
                        for (int mu = 0; mu < dim; ++mu)
                            s += Enb * Einv(mu, c) *
                                 de[nu][static_cast<size_t>(a) * dim + mu];
                    }
                    Dat(a, b, c) = s;
                }

        auto C = [&](int a, int b, int c) {
            // frame index lowered with eta
            return cf.signature[a] * (Dat(a, c, b) - Dat(a, b, c));
        };

        // omega_{abc} = -1/2 (C_{abc} + C_{bca} - C_{cab}), then to coordinate
        // legs omega_{ab,mu} = omega_{abc} e^c_mu.
        auto pairs = IndexSets::combos(dim, 2);
        const int np = binomial(dim, 2);
        for (int pr = 0; pr < np; ++pr) {
            const int a = pairs[2 * pr];
            const int b = pairs[2 * pr + 1];
            std::array<double, kMaxDim> w_abc{};
            for (int c = 0; c < dim; ++c)
                w_abc[c] = -0.5 * (C(a, b, c) + C(b, c, a) - C(c, a, b));
            for (int mu = 0; mu < dim; ++mu) {
                double s = 0.0;
                for (int c = 0; c < dim; ++c) s += w_abc[c] * e(c, mu);
                out[static_cast<size_t>(pr) * dim + mu] = s;
            }
        }
    };
    return sc;
}

Curvature curvature(const SpinConnection& sc, const DiffSpec& spec) {
    Curvature cv;
    cv.dim = sc.dim;
    cv.signature = sc.signature;
    cv.safe_dist = sc.safe_dist;
    const int dim = sc.dim;
    const int np = binomial(dim, 2);
    const int nlegs = np * dim;

    cv.comps = [sc, spec, dim, np, nlegs](std::span<const double> x,
                                          std::span<double> out) {
        std::array<double, kMaxComps * kMaxDim> w{};
        std::span<double> wv(w.data(), static_cast<size_t>(nlegs));
        sc.legs(x, wv);

        // dw[mu][...] = d_mu of all legs
        std::array<std::array<double, kMaxComps * kMaxDim>, kMaxDim> dw{};
        for (int mu = 0; mu < dim; ++mu)
            partial_derivative_array(
                sc.legs, nlegs, x, mu, spec, sc.safe_dist,
                std::span<double>(dw[mu].data(), static_cast<size_t>(nlegs)));

        auto pairs = IndexSets::combos(dim, 2);
        std::span<const double> wc(w.data(), static_cast<size_t>(nlegs));
        for (int pr = 0; pr < np; ++pr) {
            const int a = pairs[2 * pr];
            const int b = pairs[2 * pr + 1];
            for (int mn = 0; mn < np; ++mn) {
                const int mu = pairs[2 * mn];
                const int nu = pairs[2 * mn + 1];
                double v = dw[mu][static_cast<size_t>(pr) * dim + nu] -
                           dw[nu][static_cast<size_t>(pr) * dim + mu];
                for (int c = 0; c < dim; ++c)
                    v += sc.signature[c] *
                         (leg(wc, dim, a, c, mu) * leg(wc, dim, c, b, nu) -
                          leg(wc, dim, a, c, nu) * leg(wc, dim, c, b, mu));
                out[static_cast<size_t>(pr) * np + mn] = v;
            }
        }
    };
    return cv;
}

void torsion_residual(const CoFrame& cf, const SpinConnection& sc,
                      std::span<const double> x, std::span<double> out,
                      const DiffSpec& spec) {
    const int dim = cf.dim;
    const int np = binomial(dim, 2);

    SmallMatrix e(dim);
    cf.eval(x, e);
    std::array<double, kMaxComps * kMaxDim> w{};
    sc.legs(x, std::span<double>(w.data(), static_cast<size_t>(np) * dim));
    std::span<const double> wc(w.data(), static_cast<size_t>(np) * dim);

    ArrayField frame_flat = [cf, dim](std::span<const double> y,
                                      std::span<double> dst) {
        SmallMatrix m(dim);
        cf.eval(y, m);
        for (int a = 0; a < dim; ++a)
            for (int mu = 0; mu < dim; ++mu)
                dst[static_cast<size_t>(a) * dim + mu] = m(a, mu);
    };
    std::array<std::array<double, kMaxDim * kMaxDim>, kMaxDim> de{};
    for (int nu = 0; nu < dim; ++nu)
        partial_derivative_array(
            frame_flat, dim * dim, x, nu, spec, cf.safe_dist,
            std::span<double>(de[nu].data(), static_cast<size_t>(dim) * dim));

    auto pairs = IndexSets::combos(dim, 2);
    for (int a = 0; a < dim; ++a) {
        for (int mn = 0; mn < np; ++mn) {
            const int mu = pairs[2 * mn];
            const int nu = pairs[2 * mn + 1];
            // (d theta^a)_{mu nu} = d_mu e^a_nu - d_nu e^a_mu
            double v = de[mu][static_cast<size_t>(a) * dim + nu] -
                       de[nu][static_cast<size_t>(a) * dim + mu];
            // + (omega^a_b ^ theta^b)_{mu nu}, omega^a_b = eta_a omega_{ab}
            for (int b = 0; b < dim; ++b)
                v += cf.signature[a] *
                     (leg(wc, dim, a, b, mu) * e(b, nu) -
                      leg(wc, dim, a, b, nu) * e(b, mu));
            out[static_cast<size_t>(a) * np + mn] = v;
        }
    }
}

double gaussian_curvature_2d(const MetricSpec& m, std::span<const double> x,
                             const DiffSpec& spec) {
    if (m.dim != 2)
        throw InvalidParameter("gaussian_curvature_2d needs a 2D metric");
    if (!m.riemannian())
        throw InvalidParameter("gaussian_curvature_2d needs a Riemannian metric");
    CoFrame cf = coframe_from_metric(m);
    SpinConnection sc = spin_connection(cf, spec);
    Curvature cv = curvature(sc, spec);
    double om = 0.0;
    cv.comps(x, std::span<double>(&om, 1));
    SmallMatrix e(2);
    cf.eval(x, e);
    const double det_e = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    if (std::fabs(det_e) < kDegeneracyTol)
        throw DegenerateMetric("coframe determinant ~0");
    return om / det_e;
}

} // namespace topospec
