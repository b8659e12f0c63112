#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topospec/charclass.hpp"
#include "topospec/gauge.hpp"
#include "topospec/jacobi.hpp"
#include "topospec/metric.hpp"

namespace topospec {

struct GroupSpec {
    enum class Family { SO, LorentzSO13, U1, SU, Product };
    Family family = Family::SO;
    int k = 0; // for SO(k), SU(k)
    std::vector<GroupSpec> factors;

    int dimension() const;
    std::string name() const;

    static GroupSpec so(int k) { return {Family::SO, k, {}}; }
    static GroupSpec lorentz() { return {Family::LorentzSO13, 0, {}}; }
    static GroupSpec u1() { return {Family::U1, 0, {}}; }
    static GroupSpec su(int k) { return {Family::SU, k, {}}; }
    static GroupSpec product(std::vector<GroupSpec> fs) {
        return {Family::Product, 0, std::move(fs)};
    }
};

// Kerr-Newman family parameters (geometric units). r0 is the integration
// constant fixing the compact time cycle period 2*pi/r0.
struct BlackHoleParams {
    double m = 1.0;
    double e = 0.5;
    double a = 0.0;
    double r0 = 1.0;

    void validate() const;
    double horizon_plus() const;
    double horizon_minus() const;
    bool extremal(double tol = 1e-14) const;
};

// One term of a configuration's default invariant: a density integrated over
// a chart or over a cycle within it.
struct IntegrationPiece {
    Chart chart;
    std::optional<CycleSpec> cycle;
    ClassDensity density;
};

// A ready-to-integrate classical configuration: builders for its fields plus
// the default invariant (sum over pieces, times `normalization`, plus
// `correction` for analytically-handled chart margins).
struct ConfigurationDescriptor {
    std::string name;
    int base_dim = 0;
    GroupSpec group;
    std::map<std::string, double> params;
    ClassKind default_class = ClassKind::Euler2;

    std::optional<MetricSpec> metric;
    std::optional<GaugeConnection> gauge;
    std::vector<IntegrationPiece> pieces;
    double normalization = 1.0;
    double correction = 0.0;
    bool degenerate_cycle = false; // zero-width cycle: invariant is exactly 0
};

struct InvariantValue {
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
};

// Default invariant of the configuration at the given quadrature resolution.
// `workers` caps the integrator's thread count (-1: TOPOSPEC_THREADS).
InvariantValue evaluate_invariant(const ConfigurationDescriptor& cfg,
                                  const QuadratureSpec& quad, int workers = -1);

// --- catalog -------------------------------------------------------------

// Round 2-sphere of radius R: Euler class oracle. The chart keeps a margin
// delta = 1e-4 off the poles; the exact cap integral 2(1 - cos delta) is
// carried in `correction`.
ConfigurationDescriptor sphere_config(double R);

// Dirac monopole of charge g as a two-chart U(1) connection with transition
// lambda = 2 g phi; default invariant integrates F/2pi over both hemispheres.
ConfigurationDescriptor monopole_config(double g);

// Two harmonic oscillators at energy E; integration strip [0,q0] x [0,L].
// The default invariant carries the normalization 2pi/L.
ConfigurationDescriptor oscillator_config(double m, double k1, double k2,
                                          double E, double q0, double L);

// Reissner-Nordstrom U(1) connection A = -(e/r) dt on the (t,r) chart;
// default cycle r in [r-, r+], t in [0, 2pi/r0].
ConfigurationDescriptor reissner_nordstrom_config(const BlackHoleParams& p);

// Kerr-Newman U(1) connection A = -(e r / Sigma)(dt - a sin^2(theta) dphi)
// on the (t,r,theta,phi) chart. The a -> 0 limit reproduces the RN form.
ConfigurationDescriptor kerr_newman_config(const BlackHoleParams& p);

int bundle_dimension(const ConfigurationDescriptor& cfg);

struct ParamSchema {
    std::string name;
    double default_value = 0.0;
    std::string doc;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::vector<ParamSchema> params;
    bool dim_only = false;
};

const std::vector<CatalogEntry>& catalog();

// Builds a catalog configuration by name with parameter overrides. Unknown
// names or parameters raise InvalidParameter.
ConfigurationDescriptor make_config(const std::string& name,
                                    const std::map<std::string, double>& params);

} // namespace topospec
