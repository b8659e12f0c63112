#pragma once

#include "topospec/exterior.hpp"
#include "topospec/forms.hpp"
#include "topospec/metric.hpp"

namespace topospec {

using FrameFn = std::function<void(std::span<const double>, SmallMatrix&)>;

// Orthonormal coframe theta^a = e^a_mu dx^mu with
// g_{mu nu} = sum_a eta_a e^a_mu e^a_nu.
struct CoFrame {
    int dim = 0;
    std::array<int, kMaxDim> signature{};
    FrameFn e;
    SafeDistFn safe_dist;

    void eval(std::span<const double> x, SmallMatrix& out) const { e(x, out); }
};

// Torsion-free metric-compatible connection, stored on frame pairs a<b
// (lexicographic rank) as coordinate legs omega_{ab,mu}. Antisymmetry in
// (a,b) holds by storage. Layout: comps[pair * dim + mu].
struct SpinConnection {
    int dim = 0;
    std::array<int, kMaxDim> signature{};
    ArrayField legs;
    SafeDistFn safe_dist;

    int n_pairs() const { return binomial(dim, 2); }
    int n_comps() const { return n_pairs() * dim; }
};

// Curvature 2-form Omega_{ab} = d omega_{ab} + eta^{cc} omega_{ac} ^ omega_{cb},
// stored on frame pairs a<b times coordinate 2-form components (mu<nu rank).
// Layout: comps[pair * binomial(dim,2) + munu].
struct Curvature {
    int dim = 0;
    std::array<int, kMaxDim> signature{};
    ArrayField comps;
    SafeDistFn safe_dist;

    int n_pairs() const { return binomial(dim, 2); }
    int n_comps() const { return n_pairs() * n_pairs(); }
};

// Closed-form square roots for diagonal/conformal metrics; signature-aware
// triangular decomposition (declared axis order) for general symmetric ones.
CoFrame coframe_from_metric(const MetricSpec& m);

// Unique torsion-free connection of the frame, from the commutation
// coefficients C^a_{bc} of the frame vector fields:
//   omega_{abc} = -1/2 (C_{abc} + C_{bca} - C_{cab}),  omega_{ab,mu} = omega_{abc} e^c_mu.
// Frame derivatives are taken with `spec` (order-4 recommended: the result is
// differentiated once more in curvature()).
SpinConnection spin_connection(const CoFrame& cf,
                               const DiffSpec& spec = DiffSpec::order4());

Curvature curvature(const SpinConnection& sc,
                    const DiffSpec& spec = DiffSpec::order4());

// Components of d theta^a + omega^a_b ^ theta^b at x (frame index a times
// coordinate 2-form rank); all near zero for a torsion-free connection.
void torsion_residual(const CoFrame& cf, const SpinConnection& sc,
                      std::span<const double> x, std::span<double> out,
                      const DiffSpec& spec = DiffSpec::order4());

// Gaussian curvature of a 2D Riemannian metric:
// K = Omega_{12}(e_1, e_2) = Omega_{12,01} / sqrt(det g).
double gaussian_curvature_2d(const MetricSpec& m, std::span<const double> x,
                             const DiffSpec& spec = DiffSpec::order4());

} // namespace topospec
