#pragma once

#include <functional>
#include <string>
#include <vector>

#include "topospec/configurations.hpp"

namespace topospec {

using InvariantFn = std::function<InvariantValue(double)>;

// f(p) = n for one free parameter p: the invariant as a function of p, the
// search interval (inside the parameter's admissible range), and the integer
// levels to solve for. With use_abs, |f| = n is solved and the signed f is
// reported.
struct SpectrumProblem {
    InvariantFn invariant;
    std::string free_param;
    Interval search{0.0, 1.0};
    int n_min = 1;
    int n_max = 5;
    bool use_abs = true;
    int scan_points = 512;
    double root_tol = 1e-12;     // on the parameter
    double residual_tol = 1e-9;  // on |f - n|
};

struct SpectrumRow {
    int n = 0;
    double param_value = 0.0;
    double invariant_value = 0.0; // signed
    double residual = 0.0;
    double quadrature_err = 0.0;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows; // sorted by (n, param_value)
    bool no_roots = false;
    bool bracket_ambiguity = false;
    std::vector<std::string> warnings;
};

struct CurvePoint {
    double param = 0.0;
    double value = 0.0;
    double quad_err = 0.0;
    bool ok = true;       // false: evaluation failed, row kept as a flag
    int segment = 0;      // monotonic segment id
    int direction = 0;    // +1 rising, -1 falling, 0 flat within the segment
};

// Uniform-grid trace of the invariant with monotonic-segment detection.
// Per-point failures flag the row and the sweep continues.
std::vector<CurvePoint> invariant_curve(const SpectrumProblem& problem, int grid);

// Scan for sign changes of f - n (and of -f - n when use_abs) over
// scan_points, refine each bracket by bisection to root_tol, and keep roots
// whose residual passes residual_tol. Interval endpoints where |f - n|
// already passes count as roots (degenerate cycles sit exactly on them).
// An empty table sets no_roots instead of throwing; more than 10 roots for a
// single n sets bracket_ambiguity.
SpectrumTable solve_spectrum(const SpectrumProblem& problem);

// Invariant of a catalog configuration as a function of one parameter, with
// the remaining parameters fixed.
InvariantFn catalog_invariant(const std::string& config_name,
                              std::map<std::string, double> fixed_params,
                              const std::string& free_param,
                              const QuadratureSpec& quad);

// (2pi/L) * integral of the euler2 density of the single-oscillator Jacobi
// metric over [0,q0] x [0,L]; equals k q0 / (2E - k q0^2) up to quadrature
// error. The sign is positive under the positive-round-sphere orientation;
// spectra compare |f| by default.
InvariantValue oscillator_invariant_normalized(double m, double k, double E,
                                               double L, double q0,
                                               const QuadratureSpec& quad);

// Chern invariant of the Reissner-Nordstrom connection over the default
// cycle; equals 2 sqrt(m^2 - e^2) / (e r0).
InvariantValue rn_chern_invariant(const BlackHoleParams& p,
                                  const QuadratureSpec& quad);

// Horizon-area level: 4 pi e^2 A0 [n/2 + sqrt(1 + n^2/4)]^2.
double area_spectrum(double e, int n, double A0);

} // namespace topospec
