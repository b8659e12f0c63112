#pragma once

#include "topospec/chart.hpp"
#include "topospec/metric.hpp"

namespace topospec {

// Conservative mechanical system with constant kinetic matrix:
// L = 1/2 g_ab qdot^a qdot^b - V(q) at total energy E.
struct MechanicalSystem {
    int dof = 0;
    SmallMatrix mass_matrix;
    ScalarField potential;
    double energy = 0.0;

    void validate() const;
    bool isotropic_mass() const; // mass_matrix == m * identity
};

MechanicalSystem oscillator_system(double m, double k1, double k2, double E);

// The Jacobi metric h = 2(E - V) g of the system. Conformally flat when the
// mass matrix is isotropic. Evaluation throws DegenerateMetric wherever
// E - V(q) < epsilon * E; the attached safe_dist keeps finite-difference
// stencils away from that wall.
MetricSpec jacobi_metric(const MechanicalSystem& sys, double epsilon = 1e-6);

// Chart over `box` restricted to the classically allowed region
// E - V(q) >= epsilon * E.
Chart allowed_region(const MechanicalSystem& sys, std::vector<Interval> box,
                     double epsilon = 1e-6);

// Coordinate distance along `direction` (from the origin) where V reaches E,
// bracketed by geometric marching and bisected to 1e-12. Throws
// NoTurningPoint when V stays below E out to max_radius.
double turning_value(const MechanicalSystem& sys,
                     std::span<const double> direction,
                     double max_radius = 1e6);

} // namespace topospec
