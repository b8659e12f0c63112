#include "topospec/jacobi.hpp"

#include <cmath>
#include <string>

namespace topospec {

void MechanicalSystem::validate() const {
    if (dof < 1 || dof > kMaxDim)
        throw InvalidParameter("dof must be in [1," + std::to_string(kMaxDim) + "]");
    if (mass_matrix.n != dof)
        throw InvalidParameter("mass matrix size != dof");
    if (!potential) throw InvalidParameter("potential not set");
    if (!(energy > 0.0)) throw InvalidParameter("energy must be positive");
    // positive definiteness via leading principal minors
    for (int k = 1; k <= dof; ++k) {
        SmallMatrix sub(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = mass_matrix(i, j);
        if (!(determinant(sub) > 0.0))
            throw InvalidParameter("mass matrix is not positive definite "
                                   "(leading minor " + std::to_string(k) + ")");
    }
}

bool MechanicalSystem::isotropic_mass() const {
    const double m0 = mass_matrix(0, 0);
    for (int i = 0; i < dof; ++i)
        for (int j = 0; j < dof; ++j) {
            const double want = (i == j) ? m0 : 0.0;
            if (std::fabs(mass_matrix(i, j) - want) > 1e-14 * std::fabs(m0))
                return false;
        }
    return true;
}

MechanicalSystem oscillator_system(double m, double k1, double k2, double E) {
    if (!(m > 0.0)) throw InvalidParameter("oscillator mass must be positive");
    if (!(E > 0.0)) throw InvalidParameter("oscillator energy must be positive");
    if (k1 < 0.0 || k2 < 0.0)
        throw InvalidParameter("spring constants must be nonnegative");
    MechanicalSystem sys;
    sys.dof = 2;
    sys.mass_matrix = SmallMatrix::identity(2);
    sys.mass_matrix(0, 0) = m;
    sys.mass_matrix(1, 1) = m;
    sys.potential = [k1, k2](std::span<const double> q) {
        return 0.5 * (k1 * q[0] * q[0] + k2 * q[1] * q[1]);
    };
    sys.energy = E;
    sys.validate();
    return sys;
}

namespace {

// First-order distance estimate to the wall E - V = eps*E, halved for
// safety. Stencil trees shrink with it and never cross the wall.
SafeDistFn wall_distance(const MechanicalSystem& sys, double epsilon) {
    return [sys, epsilon](std::span<const double> x) {
        const double margin = sys.energy - sys.potential(x) - epsilon * sys.energy;
        if (margin <= 0.0) return 0.0;
        double grad2 = 0.0;
        std::array<double, kMaxDim> p{};
        for (size_t i = 0; i < x.size(); ++i) p[i] = x[i];
        for (int a = 0; a < sys.dof; ++a) {
            const double h = 1e-6 * std::max(1.0, std::fabs(x[a]));
            const double x0 = p[a];
            p[a] = x0 + h;
            const double vp = sys.potential(std::span<const double>(p.data(), x.size()));
            p[a] = x0 - h;
            const double vm = sys.potential(std::span<const double>(p.data(), x.size()));
            p[a] = x0;
            const double g = (vp - vm) / (2.0 * h);
            grad2 += g * g;
        }
        return 0.5 * margin / (std::sqrt(grad2) + 1e-300);
    };
}

} // namespace

MetricSpec jacobi_metric(const MechanicalSystem& sys, double epsilon) {
    sys.validate();
    const double E = sys.energy;
    const double wall = epsilon * E;
    auto V = sys.potential;

    MetricSpec m;
    if (sys.isotropic_mass()) {
        const double mass = sys.mass_matrix(0, 0);
        m = MetricSpec::make_conformal(sys.dof, [V, E, wall, mass](
                                                    std::span<const double> q) {
            const double u = E - V(q);
            if (u < wall)
                throw DegenerateMetric("point outside the allowed region "
                                       "(E - V = " + std::to_string(u) + ")");
            return 2.0 * mass * u;
        });
    } else {
        SmallMatrix g = sys.mass_matrix;
        m = MetricSpec::make_general(
            sys.dof, [V, E, wall, g](std::span<const double> q, SmallMatrix& out) {
                const double u = E - V(q);
                if (u < wall)
                    throw DegenerateMetric("point outside the allowed region "
                                           "(E - V = " + std::to_string(u) + ")");
                out = g;
                for (int i = 0; i < g.n; ++i)
                    for (int j = 0; j < g.n; ++j) out(i, j) *= 2.0 * u;
            });
    }
    m.safe_dist = wall_distance(sys, epsilon);
    return m;
}

Chart allowed_region(const MechanicalSystem& sys, std::vector<Interval> box,
                     double epsilon) {
    sys.validate();
    Chart chart(sys.dof, std::move(box));
    const double E = sys.energy;
    auto V = sys.potential;
    chart.region = [V, E, epsilon](std::span<const double> q) {
        return E - V(q) >= epsilon * E;
    };
    return chart;
}

double turning_value(const MechanicalSystem& sys,
                     std::span<const double> direction, double max_radius) {
    sys.validate();
    double norm = 0.0;
    for (double d : direction) norm += d * d;
    if (!(norm > 0.0)) throw InvalidParameter("direction must be nonzero");
    norm = std::sqrt(norm);

    auto V_at = [&](double t) {
        Point q{};
        for (size_t i = 0; i < direction.size(); ++i)
            q[i] = t * direction[i] / norm;
        return sys.potential(std::span<const double>(q.data(), direction.size()));
    };

    const double E = sys.energy;
    if (V_at(0.0) >= E)
        throw InvalidParameter("origin is not classically allowed");

    double lo = 0.0, hi = 1e-3;
    while (V_at(hi) < E) {
        lo = hi;
        hi *= 2.0;
        if (hi > max_radius)
            throw NoTurningPoint("V stays below E out to radius " +
                                 std::to_string(max_radius));
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (V_at(mid) < E ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace topospec
