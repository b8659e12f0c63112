#include "topospec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace topospec {

namespace {

void validate_problem(const SpectrumProblem& p) {
    if (!p.invariant) throw InvalidParameter("spectrum problem has no invariant");
    if (!(p.search.lo < p.search.hi))
        throw InvalidParameter("search interval must have lo < hi");
    if (p.n_min > p.n_max) throw InvalidParameter("n_min > n_max");
    if (p.scan_points < 2) throw InvalidParameter("scan_points must be >= 2");
}

double bisect_to_target(const InvariantFn& f, double target, double lo,
                        double hi, double flo, double tol) {
    // flo = f(lo) - target; keeps the sign convention of the bracket
    for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid).value - target;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<CurvePoint> invariant_curve(const SpectrumProblem& problem, int grid) {
    validate_problem(problem);
    if (grid < 2) throw InvalidParameter("curve grid must be >= 2");

    std::vector<CurvePoint> points(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        CurvePoint& pt = points[i];
        pt.param = problem.search.lo +
                   (problem.search.hi - problem.search.lo) * i / (grid - 1);
        try {
            InvariantValue v = problem.invariant(pt.param);
            pt.value = v.value;
            pt.quad_err = v.err;
        } catch (const Error&) {
            pt.ok = false;
        }
    }

    // monotonic segments over consecutive ok points
    int segment = 0;
    int prev_dir = 0;
    bool have_prev = false;
    double prev_value = 0.0;
    for (auto& pt : points) {
        if (!pt.ok) {
            have_prev = false;
            ++segment;
            pt.segment = segment;
            continue;
        }
        if (have_prev) {
            const int dir = pt.value > prev_value   ? 1
                            : pt.value < prev_value ? -1
                                                    : 0;
            if (prev_dir != 0 && dir != 0 && dir != prev_dir) ++segment;
            if (dir != 0) prev_dir = dir;
            pt.direction = dir;
        } else {
            prev_dir = 0;
        }
        pt.segment = segment;
        prev_value = pt.value;
        have_prev = true;
    }
    return points;
}

SpectrumTable solve_spectrum(const SpectrumProblem& problem) {
    validate_problem(problem);
    SpectrumTable table;

    const int ns = problem.scan_points;
    std::vector<double> xs(static_cast<size_t>(ns)), fs(static_cast<size_t>(ns));
    std::vector<bool> ok(static_cast<size_t>(ns), true);
    for (int i = 0; i < ns; ++i) {
        xs[i] = problem.search.lo +
                (problem.search.hi - problem.search.lo) * i / (ns - 1);
        try {
            fs[i] = problem.invariant(xs[i]).value;
        } catch (const Error& e) {
            ok[i] = false;
            table.warnings.push_back("scan point " + std::to_string(xs[i]) +
                                     " failed: " + e.what());
        }
    }

    for (int n = problem.n_min; n <= problem.n_max; ++n) {
        std::vector<double> roots;
        std::vector<double> targets = {static_cast<double>(n)};
        if (problem.use_abs && n != 0) targets.push_back(static_cast<double>(-n));

        for (double target : targets) {
            // endpoint roots (degenerate cycles sit exactly on the interval edge)
            for (int i : {0, ns - 1})
                if (ok[i] && std::fabs(fs[i] - target) <= problem.residual_tol)
                    roots.push_back(xs[i]);
            for (int i = 0; i + 1 < ns; ++i) {
                if (!ok[i] || !ok[i + 1]) continue;
                const double gl = fs[i] - target;
                const double gr = fs[i + 1] - target;
                if (gl == 0.0 && i > 0) {
                    roots.push_back(xs[i]);
                    continue;
                }
                if (gl * gr < 0.0)
                    roots.push_back(bisect_to_target(problem.invariant, target,
                                                     xs[i], xs[i + 1], gl,
                                                     problem.root_tol));
            }
        }

        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [&](double a, double b) {
                                    return std::fabs(a - b) <=
                                           10.0 * problem.root_tol;
                                }),
                    roots.end());
        if (static_cast<int>(roots.size()) > 10) {
            table.bracket_ambiguity = true;
            table.warnings.push_back("more than 10 roots for n = " +
                                     std::to_string(n));
        }

        for (double r : roots) {
            InvariantValue v;
            try {
                v = problem.invariant(r);
            } catch (const Error&) {
                continue;
            }
            const double residual = problem.use_abs
                                        ? std::fabs(std::fabs(v.value) - n)
                                        : std::fabs(v.value - n);
            if (residual > problem.residual_tol) continue;
            table.rows.push_back({n, r, v.value, residual, v.err});
        }
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const SpectrumRow& a, const SpectrumRow& b) {
                  return a.n != b.n ? a.n < b.n : a.param_value < b.param_value;
              });
    table.no_roots = table.rows.empty();
    return table;
}

InvariantFn catalog_invariant(const std::string& config_name,
                              std::map<std::string, double> fixed_params,
                              const std::string& free_param,
                              const QuadratureSpec& quad) {
    return [config_name, fixed_params, free_param, quad](double value) {
        auto params = fixed_params;
        params[free_param] = value;
        ConfigurationDescriptor cfg = make_config(config_name, params);
        return evaluate_invariant(cfg, quad);
    };
}

InvariantValue oscillator_invariant_normalized(double m, double k, double E,
                                               double L, double q0,
                                               const QuadratureSpec& quad) {
    if (!(k > 0.0)) throw InvalidParameter("spring constant must be positive");
    const double qt = std::sqrt(2.0 * E / k);
    if (!(q0 > 0.0 && q0 < qt))
        throw InvalidParameter("q0 must lie in (0, sqrt(2E/k)) = (0, " +
                               std::to_string(qt) + ")");
    ConfigurationDescriptor cfg = oscillator_config(m, k, 0.0, E, q0, L);
    return evaluate_invariant(cfg, quad);
}

InvariantValue rn_chern_invariant(const BlackHoleParams& p,
                                  const QuadratureSpec& quad) {
    if (p.a != 0.0) throw InvalidParameter("rn_chern_invariant requires a = 0");
    ConfigurationDescriptor cfg = reissner_nordstrom_config(p);
    return evaluate_invariant(cfg, quad);
}

double area_spectrum(double e, int n, double A0) {
    if (!(A0 > 0.0)) throw InvalidParameter("A0 must be positive");
    if (e == 0.0) throw InvalidParameter("charge must be nonzero");
    if (n < 0) throw InvalidParameter("level n must be nonnegative");
    const double half_n = 0.5 * n;
    const double bracket = half_n + std::sqrt(1.0 + half_n * half_n);
    return 4.0 * std::numbers::pi * e * e * A0 * bracket * bracket;
}

} // namespace topospec
